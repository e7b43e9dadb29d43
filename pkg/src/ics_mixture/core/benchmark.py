"""
Benchmark Module.

Runs replicated chains over a grid of algorithms, process parameters,
sample sizes and (for the importance conditional samplers) auxiliary sample
sizes, and measures their efficiency: ESS of the cluster-count and deviance
traces, wall-clock time, time per effective sample, stick cap-hit frequency
and mean sticks drawn.

Replicate r of sample size n uses data drawn from a stream keyed on
(seed, r, n) and a chain seed keyed on (seed, r), so every algorithm sees
the same data and the result does not depend on the number of workers.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 13:27:45
"""

import concurrent.futures
import dataclasses
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd

from ..diagnostics import ess
from ..exceptions import DiagnosticsError
from ..models.config import RunConfig
from ..models.dataset import Dataset
from ..models.results import BenchmarkRecord
from ..randcore import RngStream
from .chain_runner import ChainRunner, prepare_chain
from .data_reader import synthetic_dataset

logger = logging.getLogger(__name__)

ICS_ALGORITHMS = ('ics', 'gmddp-ics')
GMDDP_SYNTHETIC_GROUPS = 2
SUMMARY_COLUMNS = ['ess_kn', 'ess_deviance', 'seconds', 'time_per_ess_kn', 'time_per_ess_deviance',
                   'cap_hit_frequency', 'mean_jumps']
BENCHMARK_COLUMNS = ['row_type', 'algorithm', 'sigma', 'theta', 'n', 'm', 'replicate'] + SUMMARY_COLUMNS


@dataclass(frozen=True)
class BenchmarkJob:
    """One replicate of one benchmark cell."""
    algorithm: str
    sigma: float
    theta: float
    n: int
    m: int
    replicate: int


def replicate_seeds(seed: int, replicate: int, n: int):
    """(chain seed, data seed) of a replicate."""
    root = RngStream(seed)
    return root.substream(replicate).stream_id, root.substream(replicate, n).stream_id


def _safe_ess(trace, label: str, job: BenchmarkJob) -> float:
    try:
        return ess(trace)
    except DiagnosticsError as e:
        logger.warning("%s replicate %d: ESS of %s undefined (%s)", job.algorithm, job.replicate, label, e)
        return float('nan')


class BenchmarkRunner:
    """
    Coordinates benchmark replicates over a worker pool.

    Attributes:
        config (RunConfig): Resolved benchmark configuration
        dataset (Optional[Dataset]): Fixed input data; synthetic data are drawn
            per replicate when None
    """

    def __init__(self, config: RunConfig, dataset: Optional[Dataset] = None):
        self.config = config
        self.dataset = dataset
        self.errors: List[str] = []

    def jobs(self) -> List[BenchmarkJob]:
        """Every (algorithm, sigma, theta, n, m, replicate) combination, in output order."""
        config = self.config
        ns = [self.dataset.n] if self.dataset is not None else config.ns
        jobs = []
        for algorithm in config.algorithms:
            ms = (config.ms or [config.m]) if algorithm in ICS_ALGORITHMS else [0]
            for sigma in config.sigmas:
                for theta in config.thetas:
                    for n in ns:
                        for m in ms:
                            for replicate in range(config.replicates):
                                jobs.append(BenchmarkJob(algorithm, float(sigma), float(theta), int(n),
                                                         int(m), replicate))
        return jobs

    def _data_for(self, job: BenchmarkJob, data_seed: int) -> Dataset:
        if self.dataset is not None:
            return self.dataset
        groups = GMDDP_SYNTHETIC_GROUPS if job.algorithm == 'gmddp-ics' else 0
        return synthetic_dataset(self.config.synthetic or 'two-gaussian', job.n, data_seed, groups)

    def run_job(self, job: BenchmarkJob) -> BenchmarkRecord:
        """
        Run one replicate.

        Args:
            job (BenchmarkJob): The replicate to run

        Returns:
            BenchmarkRecord: Efficiency measures of the replicate
        """
        chain_seed, data_seed = replicate_seeds(self.config.seed, job.replicate, job.n)
        dataset = self._data_for(job, data_seed)
        run = dataclasses.replace(self.config, command='fit', algorithm=job.algorithm, sigma=job.sigma,
                                  theta=job.theta, m=max(job.m, 1), seed=chain_seed, threshold=None)
        chain, data, standardizer = prepare_chain(run, dataset)
        trace = ChainRunner(chain, data, dataset.groups, standardizer, functionals=False).run()

        return BenchmarkRecord(
            algorithm=job.algorithm, sigma=job.sigma, theta=job.theta, n=dataset.n, m=job.m,
            replicate=job.replicate,
            ess_kn=_safe_ess(trace.k_n, 'k_n', job),
            ess_deviance=_safe_ess(trace.deviance, 'deviance', job),
            seconds=trace.total_seconds,
            cap_hit_frequency=trace.cap_hit_frequency,
            mean_jumps=trace.mean_jumps,
        )

    def run(self) -> List[BenchmarkRecord]:
        """
        Run every replicate, in parallel when more than one worker is configured.

        Returns:
            List[BenchmarkRecord]: Records in job order

        Raises:
            ICSMixtureError: The first failure in job order, after all jobs finish
        """
        jobs = self.jobs()
        logger.info("Benchmark: %d replicate runs on %d worker(s)", len(jobs), self.config.workers)
        results: List[Optional[BenchmarkRecord]] = [None] * len(jobs)
        failures = {}

        if self.config.workers <= 1:
            for index, job in enumerate(jobs):
                results[index] = self.run_job(job)
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=self.config.workers) as executor:
                futures = {executor.submit(self.run_job, job): index for index, job in enumerate(jobs)}
                for future in concurrent.futures.as_completed(futures):
                    index = futures[future]
                    try:
                        results[index] = future.result()
                    except Exception as e:
                        failures[index] = e
                        self.errors.append(f"{jobs[index]}: {e}")

        if failures:
            raise failures[min(failures)]
        for record in results:
            logger.info("%s sigma=%s theta=%s n=%d m=%d rep=%d: ESS(k_n)=%.1f, %.2f s",
                        record.algorithm, record.sigma, record.theta, record.n, record.m,
                        record.replicate, record.ess_kn, record.seconds)
        return results


def benchmark_frame(records: List[BenchmarkRecord]) -> pd.DataFrame:
    """
    Replicate rows followed by one averaged summary row per cell.

    Args:
        records (List[BenchmarkRecord]): Replicate records

    Returns:
        pd.DataFrame: Table with BENCHMARK_COLUMNS; summary rows have an
            empty replicate
    """
    if not records:
        return pd.DataFrame(columns=BENCHMARK_COLUMNS)
    rows = pd.DataFrame([record.to_dict() for record in records])
    rows.insert(0, 'row_type', 'replicate')

    keys = ['algorithm', 'sigma', 'theta', 'n', 'm']
    summary = rows.groupby(keys, sort=False)[SUMMARY_COLUMNS].mean().reset_index()
    # Averaged runtime over averaged ESS, not the mean of per-replicate ratios
    for target in ('kn', 'deviance'):
        summary[f'time_per_ess_{target}'] = summary['seconds'] / summary[f'ess_{target}']
    summary.insert(0, 'row_type', 'summary')
    summary['replicate'] = np.nan

    frame = pd.concat([rows, summary], ignore_index=True)[BENCHMARK_COLUMNS]
    frame['replicate'] = frame['replicate'].astype('Int64')
    return frame


def run_benchmark(config: RunConfig, dataset: Optional[Dataset] = None) -> List[BenchmarkRecord]:
    """Run the benchmark grid of a configuration; see BenchmarkRunner."""
    return BenchmarkRunner(config, dataset).run()
