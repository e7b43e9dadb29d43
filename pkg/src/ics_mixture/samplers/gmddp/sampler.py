"""
GM-DDP Importance Conditional Sampler.

ICS for mixtures of a Griffiths-Milne dependent Dirichlet process. Group l
draws from w_l gamma_l + (1 - w_l) gamma_0, where gamma_0 is shared by every
group. Each step summarizes the common process and every idiosyncratic
process, updates w, reallocates every observation over the four kinds of
candidate atoms (own auxiliary, own fixed, common auxiliary, common fixed)
and refreshes the atoms of each process.

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 10:40:17
"""

import concurrent.futures
import logging
from typing import Any, Dict, List, Optional

import numpy as np

from ...exceptions import ParameterDomainError, SamplerError
from ...kernels import AtomArray, BaseMeasure, MixtureRealization
from ...models.params import GMDDPParams, PartitionCounts, PYParams
from ...models.state import AllocationState, GMDDPState, MeasureSummary, StepResult
from ...pyprocess import auxiliary_sample, posterior_weights_draw, urn_partition
from ...randcore import RngStream, categorical_from_log_weights
from ..base_sampler import BaseSampler, allocate_in_blocks
from .weights import WeightUpdater, fullcond_target, gmddp_prior_weights, mixture_log_terms

logger = logging.getLogger(__name__)


def _process_summary(rng: RngStream, atoms: AtomArray, counts: np.ndarray, mass: float,
                     base: BaseMeasure, m: int) -> MeasureSummary:
    """Summary (s, t, p) of one DP component given its current clusters."""
    params = PYParams(0.0, mass)
    partition = PartitionCounts(counts.tolist())
    weights = posterior_weights_draw(rng, partition, params)
    aux_atoms, multiplicities = auxiliary_sample(rng, m, partition.k, params, base)
    return MeasureSummary(atoms, aux_atoms, multiplicities, weights)


def group_realization(summaries: List[MeasureSummary], w: np.ndarray, group: int) -> MixtureRealization:
    """Density realization w_l f_l + (1 - w_l) f_0 of one group."""
    own, common = summaries[group + 1], summaries[0]
    weights = np.concatenate([w[group] * own.component_weights(), (1.0 - w[group]) * common.component_weights()])
    return MixtureRealization(weights, AtomArray.concatenate([own.component_atoms(), common.component_atoms()]))


def gmddp_ics_step(rng: RngStream, state: GMDDPState, data: np.ndarray, params: GMDDPParams,
                   base: BaseMeasure, m: int, updater: Optional[WeightUpdater] = None,
                   executor: Optional[concurrent.futures.Executor] = None) -> GMDDPState:
    """
    One ICS iteration for the GM-DDP mixture.

    Args:
        rng (RngStream): Stream of this iteration
        state (GMDDPState): Current state
        data (np.ndarray): Observations, shape (n, d)
        params (GMDDPParams): Process parameters
        base (BaseMeasure): Conjugate base measure
        m (int): Auxiliary sample size per process
        updater (Optional[WeightUpdater]): Metropolis updater for w
        executor (Optional[concurrent.futures.Executor]): Pool for the allocation blocks

    Returns:
        GMDDPState: New state carrying the summaries used by the step

    Raises:
        DegenerateLikelihoodError: If an observation has no finite allocation weight
    """
    if m < 1:
        raise ParameterDomainError(f"Auxiliary sample size must be positive, got {m}")
    L = state.L
    if updater is None:
        updater = WeightUpdater(L)

    summaries = [_process_summary(rng, state.atoms[0], state.process_counts(0), params.common_mass, base, m)]
    for group in range(L):
        summaries.append(_process_summary(rng, state.atoms[group + 1], state.process_counts(group + 1),
                                          params.idiosyncratic_mass, base, m))
    state = GMDDPState(state.groups, state.process, state.labels, state.atoms, state.w, summaries)

    log_idio, log_common = mixture_log_terms(state, data)
    w = updater.update(rng, state.w, fullcond_target(params, state.groups, log_idio, log_common))

    # Candidates are laid out process by process: common first, then each group
    components = [s.component_atoms().prepare() for s in summaries]
    sizes = np.array([len(c) for c in components])
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    with np.errstate(divide='ignore'):
        log_weights = [np.log(s.component_weights()) for s in summaries]

    def draw_block(rows: slice, uniforms: np.ndarray) -> np.ndarray:
        block_groups = state.groups[rows]
        block_data = data[rows]
        choices = np.empty(block_groups.size, dtype=np.int64)
        for group in np.unique(block_groups):
            members = np.flatnonzero(block_groups == group)
            x = block_data[members]
            own = components[group + 1].log_kernel(x) + np.log(w[group]) + log_weights[group + 1][None, :]
            shared = components[0].log_kernel(x) + np.log1p(-w[group]) + log_weights[0][None, :]
            picked = categorical_from_log_weights(uniforms[members], np.hstack([own, shared]))
            own_size = sizes[group + 1]
            choices[members] = np.where(picked < own_size, offsets[group + 1] + picked, picked - own_size)
        return choices

    flat = allocate_in_blocks(rng, data.shape[0], draw_block, executor)
    process = np.searchsorted(offsets, flat, side='right') - 1
    local = flat - offsets[process]

    labels = np.empty_like(local)
    atoms = []
    for p in range(L + 1):
        members = np.flatnonzero(process == p)
        if members.size == 0:
            atoms.append(AtomArray.empty(base.dim))
            continue
        allocated = AllocationState.compact(local[members], components[p])
        labels[members] = allocated.labels
        atoms.append(base.refresh_atoms(rng, data[members], allocated.labels, allocated.k))

    return GMDDPState(state.groups, process, labels, atoms, w, summaries)


def gmddp_prior_predictive_counts(rng: RngStream, params: GMDDPParams, group_sizes) -> np.ndarray:
    """
    Distinct values per group in a draw from the GM-DDP prior predictive.

    Weights are drawn from their prior; each observation then picks its
    group's idiosyncratic process with probability w_l or the common
    process otherwise, and each process seats its observations through a
    Polya urn with its own mass.

    Args:
        rng (RngStream): Source of randomness
        params (GMDDPParams): Process parameters
        group_sizes: Number of observations per group, length L

    Returns:
        np.ndarray: Number of distinct values in each group
    """
    group_sizes = np.asarray(group_sizes, dtype=np.int64)
    if group_sizes.shape != (int(params.L),) or np.any(group_sizes < 0):
        raise ParameterDomainError(f"Need {params.L} nonnegative group sizes, got {group_sizes}")
    w = gmddp_prior_weights(rng, params)
    gen = rng.generator
    idiosyncratic = [gen.random(size) < w[group] for group, size in enumerate(group_sizes)]

    common_members = [np.flatnonzero(~flags) for flags in idiosyncratic]
    common_total = int(sum(members.size for members in common_members))
    common_labels = urn_partition(rng, common_total, PYParams(0.0, params.common_mass))
    owners = np.repeat(np.arange(params.L), [members.size for members in common_members])

    counts = np.zeros(int(params.L), dtype=np.int64)
    for group, flags in enumerate(idiosyncratic):
        own = int(flags.sum())
        own_distinct = int(urn_partition(rng, own, PYParams(0.0, params.idiosyncratic_mass)).max()) + 1 if own else 0
        shared = np.unique(common_labels[owners == group]).size
        counts[group] = own_distinct + shared
    return counts


class GMDDPSampler(BaseSampler):
    """
    ICS for grouped data under a GM-DDP mixture.

    Attributes:
        params (GMDDPParams): Process parameters
        groups (np.ndarray): Group index per observation
        m (int): Auxiliary sample size per process
        updater (WeightUpdater): Metropolis updater for w
    """

    def __init__(self, data: np.ndarray, base: BaseMeasure, params: GMDDPParams, groups=None,
                 m: int = 10, threads: int = 1, adapt_steps: int = 0, **_: Any):
        super().__init__('gmddp-ics', data, base, threads)
        if groups is None:
            raise SamplerError("gmddp-ics needs a group index per observation")
        groups = np.asarray(groups, dtype=np.int64)
        if groups.shape != (self.n,):
            raise SamplerError(f"Expected {self.n} group labels, got shape {groups.shape}")
        if groups.min() < 0 or groups.max() >= params.L:
            raise SamplerError(f"Group labels must lie in 0..{params.L - 1}")
        if m < 1:
            raise ParameterDomainError(f"Auxiliary sample size must be positive, got {m}")
        self.params = params
        self.groups = groups
        self.m = int(m)
        self.updater = WeightUpdater(int(params.L), adapt_steps=adapt_steps)

    def initialize(self, rng: RngStream) -> GMDDPState:
        """All observations idiosyncratic, one cluster per group, w from the prior."""
        L = int(self.params.L)
        atoms = [AtomArray.empty(self.base.dim)]
        for group in range(L):
            members = self.data[self.groups == group]
            atoms.append(AtomArray.from_atoms([self.base.posterior_draw(rng, members)]) if members.size
                         else AtomArray.empty(self.base.dim))
        w = gmddp_prior_weights(rng, self.params)
        return GMDDPState(self.groups, self.groups + 1, np.zeros(self.n, dtype=np.int64), atoms, w)

    def step(self, rng: RngStream, state: GMDDPState) -> StepResult:
        new_state = gmddp_ics_step(rng, state, self.data, self.params, self.base, self.m,
                                   self.updater, self.executor)
        self._advance()
        realizations = {group: group_realization(new_state.summaries, new_state.w, group)
                        for group in range(new_state.L)}
        return StepResult(new_state, realizations)

    def get_metadata(self) -> Dict[str, Any]:
        metadata = super().get_metadata()
        metadata.update({
            'params': self.params.to_dict(),
            'm': self.m,
            'group_sizes': np.bincount(self.groups, minlength=self.params.L).tolist(),
            'w_update': self.updater.to_dict(),
        })
        return metadata
