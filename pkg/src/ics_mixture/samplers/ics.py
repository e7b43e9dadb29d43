"""
Importance Conditional Sampler.

Conditional Gibbs sampler for Pitman-Yor mixtures. Given the current
clusters, the random measure is summarized by the fixed atoms t, Dirichlet
weights p, and an auxiliary sample s from the updated urn standing in for
the diffuse remainder. Observations are then reallocated independently over
the m-or-fewer auxiliary atoms and the k fixed atoms, and every surviving
atom is refreshed from its conjugate full conditional.

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-16 20:40:12
"""

import concurrent.futures
import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..exceptions import ParameterDomainError
from ..kernels import AtomArray, BaseMeasure
from ..models.params import PartitionCounts, PYParams
from ..models.state import AllocationState, MeasureSummary, StepResult
from ..pyprocess import auxiliary_sample, posterior_weights_draw
from ..randcore import RngStream
from .base_sampler import BaseSampler, allocate_in_blocks, categorical_block

logger = logging.getLogger(__name__)


def ics_step(rng: RngStream, state: AllocationState, data: np.ndarray, params: PYParams,
             base: BaseMeasure, m: int,
             executor: Optional[concurrent.futures.Executor] = None) -> Tuple[AllocationState, MeasureSummary]:
    """
    One importance conditional sampling iteration.

    Args:
        rng (RngStream): Stream of this iteration
        state (AllocationState): Current allocation
        data (np.ndarray): Observations, shape (n, d)
        params (PYParams): Process parameters
        base (BaseMeasure): Conjugate base measure
        m (int): Auxiliary sample size
        executor (Optional[concurrent.futures.Executor]): Pool for the allocation blocks

    Returns:
        Tuple[AllocationState, MeasureSummary]: New allocation and the summary used

    Raises:
        DegenerateLikelihoodError: If an observation has no finite allocation weight
    """
    if m < 1:
        raise ParameterDomainError(f"Auxiliary sample size must be positive, got {m}")

    counts = PartitionCounts(state.counts.tolist())
    weights = posterior_weights_draw(rng, counts, params)
    aux_atoms, multiplicities = auxiliary_sample(rng, m, counts.k, params, base)
    summary = MeasureSummary(state.atoms, aux_atoms, multiplicities, weights)

    components = summary.component_atoms().prepare()
    with np.errstate(divide='ignore'):
        log_weights = np.log(summary.component_weights())

    def block_weights(rows: slice) -> np.ndarray:
        return components.log_kernel(data[rows]) + log_weights[None, :]

    choices = allocate_in_blocks(rng, data.shape[0], categorical_block(block_weights), executor)
    allocated = AllocationState.compact(choices, components)
    atoms = base.refresh_atoms(rng, data, allocated.labels, allocated.k)
    return AllocationState(allocated.labels, atoms), summary


class ICSSampler(BaseSampler):
    """
    Importance conditional sampler for exchangeable Pitman-Yor mixtures.

    Attributes:
        params (PYParams): Process parameters
        m (int): Auxiliary sample size
    """

    def __init__(self, data: np.ndarray, base: BaseMeasure, params: PYParams, m: int = 10,
                 threads: int = 1, **_: Any):
        super().__init__('ics', data, base, threads)
        if m < 1:
            raise ParameterDomainError(f"Auxiliary sample size must be positive, got {m}")
        self.params = params
        self.m = int(m)

    def initialize(self, rng: RngStream) -> AllocationState:
        atom = self.base.posterior_draw(rng, self.data)
        return AllocationState(np.zeros(self.n, dtype=np.int64), AtomArray.from_atoms([atom]))

    def step(self, rng: RngStream, state: AllocationState) -> StepResult:
        new_state, summary = ics_step(rng, state, self.data, self.params, self.base, self.m, self.executor)
        self._advance()
        return StepResult(new_state, summary.realization())

    def get_metadata(self) -> Dict[str, Any]:
        metadata = super().get_metadata()
        metadata.update({'params': self.params.to_dict(), 'm': self.m})
        return metadata
