"""
Report Generator.

This module writes the result files of every command: CSV tables for
densities, traces, benchmarks and truncation studies, a metadata.json
record stamped with the output schema version, and a Markdown summary.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 14:06:33
"""

import json
import logging
import os
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from .. import __version__
from ..core.benchmark import benchmark_frame
from ..core.chain_runner import parse_functional_key
from ..diagnostics import ess
from ..exceptions import DiagnosticsError
from ..models.config import ChainConfig, RunConfig
from ..models.dataset import Dataset, Standardizer
from ..models.results import BenchmarkRecord, DensitySummary, TruncationReport
from ..models.trace import ChainTrace
from ..truncation import summarize_reports
from .templates import MarkdownTemplate

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

OUTPUT_FILES = {
    'density': 'density.csv',
    'marginal': 'marginal_density.csv',
    'conditional': 'conditional_probability.csv',
    'trace': 'trace.csv',
    'metadata': 'metadata.json',
    'summary': 'summary.md',
    'benchmark': 'benchmark.csv',
    'truncation_draws': 'truncation_draws.csv',
    'truncation_exceedance': 'truncation_exceedance.csv',
}


def _jsonable(value: Any) -> Any:
    """JSON fallback for numpy scalars and arrays."""
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def trace_ess(values: Sequence[float]) -> Optional[float]:
    """ESS of a trace, or None when it is undefined."""
    try:
        return ess(values)
    except DiagnosticsError as e:
        logger.warning("ESS not reported: %s", e)
        return None


class ReportGenerator:
    """
    Writes result files into one output directory.

    Attributes:
        output_dir (str): Directory receiving the files
        written (List[str]): Paths written so far
    """

    def __init__(self, output_dir: str = "results"):
        """
        Initialize the report generator.

        Args:
            output_dir (str): Directory for the result files
        """
        self.output_dir = output_dir
        os.makedirs(output_dir, exist_ok=True)
        self.template = MarkdownTemplate()
        self.written: List[str] = []

    def _path(self, kind: str) -> str:
        return os.path.join(self.output_dir, OUTPUT_FILES[kind])

    def _write_frame(self, frame: pd.DataFrame, kind: str) -> str:
        path = self._path(kind)
        frame.to_csv(path, index=False, lineterminator='\n')
        self.written.append(path)
        logger.info("Wrote %s (%d rows)", path, len(frame))
        return path

    def _write_metadata(self, metadata: Dict[str, Any]) -> str:
        path = self._path('metadata')
        record = {
            'schema_version': SCHEMA_VERSION,
            'package_version': __version__,
            'generated_at': datetime.now(timezone.utc).isoformat(),
            **metadata,
        }
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(record, f, indent=2, default=_jsonable, allow_nan=False)
            f.write('\n')
        self.written.append(path)
        logger.info("Wrote %s", path)
        return path

    def _write_summary(self, title: str, settings: List, sections: List[Dict[str, Any]]) -> str:
        report_data = {
            'title': title,
            'timestamp': datetime.now(timezone.utc).strftime('%Y-%m-%d %H:%M:%S'),
            'version': __version__,
            'settings': settings,
            'sections': sections,
        }
        path = self._path('summary')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.template.render(report_data))
        self.written.append(path)
        return path

    @staticmethod
    def _sanitize(value: Any) -> Any:
        """Replace non-finite floats so the metadata stays strict JSON."""
        if isinstance(value, dict):
            return {k: ReportGenerator._sanitize(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [ReportGenerator._sanitize(v) for v in value]
        if isinstance(value, (float, np.floating)) and not np.isfinite(value):
            return None
        return value

    def density_frames(self, summaries: Dict[str, DensitySummary], dataset: Dataset) -> Dict[str, pd.DataFrame]:
        """
        Collect summaries into one table per functional kind.

        Grouped summaries get a leading 'group' column with the original
        group labels; marginals get a leading 'axis' column (1-based).
        """
        tables: Dict[str, List[pd.DataFrame]] = {}
        for key, summary in summaries.items():
            kind, axis, group = parse_functional_key(key)
            frame = summary.to_frame() if kind == 'density' else summary.to_frame(['x'])
            if kind == 'marginal':
                frame.insert(0, 'axis', axis + 1)
            if group is not None:
                frame.insert(0, 'group', dataset.group_names[group])
            tables.setdefault(kind, []).append(frame)
        return {kind: pd.concat(frames, ignore_index=True) for kind, frames in tables.items()}

    def write_fit(self, trace: ChainTrace, summaries: Dict[str, DensitySummary], run: RunConfig,
                  chain: ChainConfig, dataset: Dataset, standardizer: Standardizer) -> List[str]:
        """
        Write the results of the fit command.

        Args:
            trace (ChainTrace): Retained iterations
            summaries (Dict[str, DensitySummary]): Posterior summaries by functional key
            run (RunConfig): Resolved configuration
            chain (ChainConfig): Chain configuration used
            dataset (Dataset): Fitted data
            standardizer (Standardizer): Standardizing map

        Returns:
            List[str]: Paths written
        """
        columns = {}
        for kind, frame in self.density_frames(summaries, dataset).items():
            self._write_frame(frame, kind)
            columns[OUTPUT_FILES[kind]] = list(frame.columns)
        trace_frame = trace.to_frame()
        self._write_frame(trace_frame, 'trace')
        columns[OUTPUT_FILES['trace']] = list(trace_frame.columns)

        ess_kn, ess_dev = trace_ess(trace.k_n), trace_ess(trace.deviance)
        integrals = {key: s.integral() for key, s in summaries.items() if key.startswith('density')}
        metadata = {
            'command': 'fit',
            'config': run.to_dict(),
            'seed': run.seed,
            'data': dataset.get_summary(),
            'standardization': standardizer.to_dict(),
            'params': chain.params.to_dict(),
            'base': chain.base.to_dict(),
            'grid': chain.grid.to_dict() if chain.grid else None,
            'chain': trace.get_summary(),
            'sampler': trace.metadata,
            'acceptance_rates': trace.metadata.get('w_update', {}).get('acceptance_rates'),
            'ess': {'k_n': ess_kn, 'deviance': ess_dev},
            'density_integrals': integrals,
            'columns': columns,
        }
        self._write_metadata(self._sanitize(metadata))

        chain_summary = trace.get_summary()
        lines = [
            f"Retained iterations: {chain_summary['retained_iterations']}",
            f"Mean number of clusters: {MarkdownTemplate.format_cell(chain_summary['mean_k_n'])}",
            f"ESS of k_n: {MarkdownTemplate.format_cell(ess_kn)}",
            f"ESS of deviance ({trace.deviance_mode}): {MarkdownTemplate.format_cell(ess_dev)}",
            f"Sampling time: {chain_summary['total_seconds']:.2f} s",
            f"Cap hits: {chain_summary['cap_hit_count']} "
            f"({chain_summary['cap_hit_frequency']:.2%} of iterations)",
        ]
        lines += [f"Integral of {key}: {value:.4f}" for key, value in integrals.items()]
        if trace.w:
            means = np.mean(np.stack(trace.w), axis=0)
            lines.append(f"Posterior mean of w: {', '.join(f'{v:.3f}' for v in means)}")
        self._write_summary(
            f"Fit: {run.algorithm}",
            [('algorithm', run.algorithm), ('data', dataset.source), ('n', dataset.n),
             ('dimension', dataset.dim), ('params', chain.params.to_dict()),
             ('iterations', run.iterations), ('burn-in', run.burnin), ('seed', run.seed)],
            [{'title': 'Chain', 'lines': lines}],
        )
        return list(self.written)

    def write_benchmark(self, records: List[BenchmarkRecord], run: RunConfig) -> List[str]:
        """
        Write the results of the benchmark command.

        Args:
            records (List[BenchmarkRecord]): Replicate records
            run (RunConfig): Resolved configuration

        Returns:
            List[str]: Paths written
        """
        frame = benchmark_frame(records)
        self._write_frame(frame, 'benchmark')
        summary = frame[frame['row_type'] == 'summary']
        self._write_metadata(self._sanitize({
            'command': 'benchmark',
            'config': run.to_dict(),
            'seed': run.seed,
            'replicate_rows': int((frame['row_type'] == 'replicate').sum()),
            'summary_rows': int(len(summary)),
            'columns': {OUTPUT_FILES['benchmark']: list(frame.columns)},
        }))

        header = ['algorithm', 'sigma', 'theta', 'n', 'm', 'ess_kn', 'time_per_ess_kn', 'cap_hit_frequency']
        rows = [[row[c] for c in header] for _, row in summary.iterrows()]
        self._write_summary(
            "Benchmark",
            [('algorithms', ', '.join(run.algorithms)), ('replicates', run.replicates),
             ('iterations', run.iterations), ('burn-in', run.burnin), ('seed', run.seed)],
            [{'title': 'Averages over replicates', 'table': MarkdownTemplate.table(header, rows)}],
        )
        return list(self.written)

    def write_truncation(self, reports: List[TruncationReport], run: RunConfig) -> List[str]:
        """
        Write the results of the truncation command.

        Args:
            reports (List[TruncationReport]): One report per (sigma, theta, n) cell
            run (RunConfig): Resolved configuration

        Returns:
            List[str]: Paths written
        """
        draws = pd.concat([r.draws_frame() for r in reports], ignore_index=True)
        exceedance = pd.concat([r.exceedance_frame() for r in reports], ignore_index=True)
        self._write_frame(draws, 'truncation_draws')
        self._write_frame(exceedance, 'truncation_exceedance')
        self._write_metadata(self._sanitize({
            'command': 'truncation',
            'config': run.to_dict(),
            'seed': run.seed,
            'cells': summarize_reports(reports),
            'columns': {
                OUTPUT_FILES['truncation_draws']: list(draws.columns),
                OUTPUT_FILES['truncation_exceedance']: list(exceedance.columns),
            },
        }))

        header = ['sigma', 'theta', 'n', 'median M_n'] + [f'P(M_n > {k:g})' for k in run.thresholds]
        rows = []
        for report in reports:
            marked = [f"{p:.3f}" + ('' if s == 'direct' else f" ({s})")
                      for p, s in zip(report.exceedance, report.source)]
            rows.append([report.sigma, report.theta, report.n, report.quantiles.get('median')] + marked)
        self._write_summary(
            "Truncation study",
            [('reps', run.reps), ('cap', run.cap), ('thresholds', run.thresholds), ('seed', run.seed)],
            [{'title': 'Exceedance probabilities', 'table': MarkdownTemplate.table(header, rows)}],
        )
        return list(self.written)
