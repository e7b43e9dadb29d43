"""
Chain Runner Module.

This module drives one Markov chain from a resolved configuration: it builds
the sampler, advances it through burn-in and the retained iterations,
records the trace and the grid functionals of every retained realization,
and turns those realizations into posterior summaries on the original data
scale.

Randomness is keyed by iteration: the initial state uses
RngStream(seed).substream(0) and iteration r uses substream(r).

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 12:41:08
"""

import logging
import time
from typing import Dict, Optional, Tuple

import numpy as np

from ..diagnostics import density_summary, deviance
from ..exceptions import ConfigurationError
from ..kernels import BaseMeasure, MixtureRealization, NIGBase, NIWBase
from ..models.config import ChainConfig, GridSpec, RunConfig
from ..models.dataset import Dataset, Standardizer
from ..models.params import GMDDPParams, PYParams
from ..models.results import DensitySummary
from ..models.trace import ChainTrace
from ..randcore import RngStream
from ..samplers import create_sampler

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 100


def functional_key(kind: str, axis: Optional[int] = None, group: Optional[int] = None) -> str:
    """Name of a recorded functional, e.g. 'density', 'marginal/1', 'density@0'."""
    key = kind if axis is None else f'{kind}/{axis}'
    return key if group is None else f'{key}@{group}'


def parse_functional_key(key: str) -> Tuple[str, Optional[int], Optional[int]]:
    """Inverse of functional_key."""
    body, _, group = key.partition('@')
    kind, _, axis = body.partition('/')
    return kind, int(axis) if axis else None, int(group) if group else None


def build_base(run: RunConfig, dim: int) -> BaseMeasure:
    """
    Base measure from the run's hyperparameters.

    Unset values fall back to NIG(0, 0.2, 2, 1) for d = 1 and
    NIW(0, 2, 5, I) for d = 2.
    """
    m0 = 0.0 if run.m0 is None else run.m0
    if dim == 1:
        return NIGBase(m0=m0, k0=0.2 if run.k0 is None else run.k0, a0=run.a0, b0=run.b0)
    return NIWBase(m0=np.full(dim, m0), k0=2.0 if run.k0 is None else run.k0,
                   nu0=max(5.0, dim + 3.0) if run.nu0 is None else run.nu0,
                   S0=run.s0 * np.eye(dim))


def build_params(run: RunConfig, dataset: Dataset):
    """PYParams, or GMDDPParams sized to the data's groups for gmddp-ics."""
    if run.algorithm == 'gmddp-ics':
        if dataset.groups is None:
            raise ConfigurationError("gmddp-ics needs grouped data (a leading group column)")
        return GMDDPParams(run.theta, run.z, dataset.n_groups)
    return PYParams(run.sigma, run.theta)


def prepare_chain(run: RunConfig, dataset: Dataset) -> Tuple[ChainConfig, np.ndarray, Standardizer]:
    """
    Resolve a run configuration against a data set.

    Args:
        run (RunConfig): Resolved command-line configuration
        dataset (Dataset): Observations in the original scale

    Returns:
        Tuple[ChainConfig, np.ndarray, Standardizer]: Chain configuration,
            data in the sampler's scale, and the standardizing map
    """
    standardizer = Standardizer.fit(dataset.X) if run.standardize else Standardizer.identity(dataset.dim)
    data = standardizer.transform(dataset.X)

    if run.grid_min is not None or run.grid_max is not None:
        if run.grid_min is None or run.grid_max is None:
            raise ConfigurationError("grid_min and grid_max must be given together")
        lower = standardizer.transform(np.broadcast_to(run.grid_min, (dataset.dim,)))
        upper = standardizer.transform(np.broadcast_to(run.grid_max, (dataset.dim,)))
        default = 512 if dataset.dim == 1 else 64
        grid = GridSpec(lower.tolist(), upper.tolist(), [run.grid_points or default] * dataset.dim)
    else:
        grid = GridSpec.from_data(data, run.grid_points)

    config = ChainConfig(
        algorithm=run.algorithm,
        params=build_params(run, dataset),
        base=build_base(run, dataset.dim),
        m=run.m,
        iterations=run.iterations,
        burnin=run.burnin,
        seed=run.seed,
        grid=grid,
        jump_cap=run.jump_cap,
        threads=run.threads,
        deviance_mode=run.deviance_mode,
        threshold=run.threshold,
        threshold_axis=run.threshold_axis,
    )
    return config, data, standardizer


class ChainRunner:
    """
    Runs one chain and summarizes its realizations.

    Attributes:
        config (ChainConfig): Chain configuration
        data (np.ndarray): Observations in the sampler's scale
        groups (Optional[np.ndarray]): Group index per observation
        standardizer (Standardizer): Map from the original to the sampler's scale
        functionals (bool): Whether to evaluate realizations on the grid
    """

    def __init__(self, config: ChainConfig, data: np.ndarray, groups: Optional[np.ndarray] = None,
                 standardizer: Optional[Standardizer] = None, functionals: bool = True):
        data = np.asarray(data, dtype=float)
        if data.ndim == 1:
            data = data[:, None]
        self.config = config
        self.data = data
        self.groups = groups
        self.standardizer = standardizer or Standardizer.identity(data.shape[1])
        self.functionals = functionals
        self.grid = config.grid or GridSpec.from_data(data)
        self._axes = self.grid.axes()
        self._lattice = self.grid.lattice()

    @property
    def dim(self) -> int:
        return int(self.data.shape[1])

    def _original_axis(self, axis: int) -> np.ndarray:
        return self.standardizer.center[axis] + self.standardizer.scale[axis] * self._axes[axis]

    def evaluate(self, realization: MixtureRealization, group: Optional[int] = None) -> Dict[str, np.ndarray]:
        """
        Grid functionals of one realization, as densities in the original scale.

        Args:
            realization (MixtureRealization): Density realization in the sampler's scale
            group (Optional[int]): Group the realization belongs to

        Returns:
            Dict[str, np.ndarray]: Values keyed by functional_key
        """
        values = {functional_key('density', group=group):
                  realization.density(self._lattice) * self.standardizer.jacobian}
        if self.dim == 2:
            for axis in range(2):
                values[functional_key('marginal', axis, group)] = (
                    realization.marginal_density(axis, self._axes[axis]) / self.standardizer.scale[axis]
                )
            if self.config.threshold is not None:
                axis = self.config.threshold_axis
                given = 1 - axis
                cut = float(self.standardizer.transform_axis(self.config.threshold, axis))
                values[functional_key('conditional', group=group)] = realization.conditional_probability(
                    cut, axis, given, self._axes[given])
        return values

    def run(self) -> ChainTrace:
        """
        Run the chain.

        Returns:
            ChainTrace: Records of the iterations after burn-in

        Raises:
            DegenerateLikelihoodError: If an allocation or the log deviance degenerates
            SamplerError: If the sampler rejects its inputs
        """
        config = self.config
        root = RngStream(config.seed)
        trace = ChainTrace(config.algorithm, config.deviance_mode)

        with create_sampler(config.algorithm, data=self.data, base=config.base, params=config.params,
                            m=config.m, jump_cap=config.jump_cap, threads=config.threads,
                            groups=self.groups, adapt_steps=config.burnin) as sampler:
            logger.info("Starting %s: %d iterations, burn-in %d, seed %d",
                        sampler, config.iterations, config.burnin, config.seed)
            state = sampler.initialize(root.substream(0))

            for iteration in range(1, config.iterations + 1):
                started = time.perf_counter()
                result = sampler.step(root.substream(iteration), state)
                seconds = time.perf_counter() - started
                state = result.state

                if iteration % PROGRESS_EVERY == 0:
                    logger.debug("%s iteration %d: k_n=%d", sampler.name, iteration,
                                 sampler.cluster_count(state))
                if iteration <= config.burnin:
                    continue

                if not self.functionals:
                    functionals = {}
                elif isinstance(result.realization, dict):
                    functionals = {}
                    for group, realization in result.realization.items():
                        functionals.update(self.evaluate(realization, group))
                else:
                    functionals = self.evaluate(result.realization)

                trace.record(
                    iteration,
                    sampler.cluster_count(state),
                    deviance(sampler.allocation(state), self.data, config.deviance_mode),
                    seconds,
                    jumps_drawn=result.jumps_drawn,
                    cap_hit=result.cap_hit,
                    functionals=functionals,
                    w=getattr(state, 'w', None),
                )

            trace.metadata = sampler.get_metadata()

        trace.validate()
        logger.info("Finished %s: %d retained iterations in %.2f s, cap hits %d",
                    config.algorithm, len(trace), trace.total_seconds, trace.cap_hit_count)
        return trace

    def summarize(self, trace: ChainTrace, band_level: float = 0.9) -> Dict[str, DensitySummary]:
        """
        Pointwise posterior summaries of every recorded functional.

        Args:
            trace (ChainTrace): Trace produced by run
            band_level (float): Credible level of the bands

        Returns:
            Dict[str, DensitySummary]: Summaries keyed by functional_key, on
                original-scale grids
        """
        summaries = {}
        for key in trace.functionals:
            kind, axis, _ = parse_functional_key(key)
            if kind == 'density':
                axes = [self._original_axis(i) for i in range(self.dim)]
            elif kind == 'marginal':
                axes = [self._original_axis(axis)]
            else:
                axes = [self._original_axis(1 - self.config.threshold_axis)]
            summaries[key] = density_summary(trace.functionals[key], band_level, axes, label=key)
        return summaries


def run_chain(config: ChainConfig, data: np.ndarray, groups: Optional[np.ndarray] = None,
              standardizer: Optional[Standardizer] = None) -> ChainTrace:
    """Run one chain; see ChainRunner.run."""
    return ChainRunner(config, data, groups, standardizer).run()


def fit(run: RunConfig, dataset: Dataset) -> Tuple[ChainTrace, Dict[str, DensitySummary], ChainConfig,
                                                   Standardizer]:
    """
    Fit one data set: resolve, run and summarize a chain.

    Args:
        run (RunConfig): Resolved configuration
        dataset (Dataset): Observations

    Returns:
        Tuple: Trace, summaries, chain configuration and standardizer
    """
    config, data, standardizer = prepare_chain(run, dataset)
    runner = ChainRunner(config, data, dataset.groups, standardizer)
    trace = runner.run()
    return trace, runner.summarize(trace, run.band_level), config, standardizer
