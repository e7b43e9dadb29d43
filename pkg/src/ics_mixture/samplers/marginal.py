"""
Marginal Sampler.

Collapsed Gibbs sampler that integrates the random measure out and moves
one observation at a time through the Pitman-Yor predictive urn, followed
by the conjugate atom refresh.

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-16 10:55:48
"""

import logging
from typing import Any, Dict

import numpy as np

from ..exceptions import DegenerateLikelihoodError
from ..kernels import AtomArray, BaseMeasure, MixtureRealization
from ..models.params import PYParams
from ..models.state import AllocationState, StepResult
from ..randcore import RngStream
from .base_sampler import BaseSampler

logger = logging.getLogger(__name__)


def marginal_log_weights(counts: np.ndarray, log_kernels: np.ndarray, log_predictive: float,
                         params: PYParams) -> np.ndarray:
    """
    Unnormalized log-weights of the existing clusters and of a new cluster.

    Args:
        counts (np.ndarray): Cluster sizes without the moving observation
        log_kernels (np.ndarray): log K(x_i; theta_j) per cluster
        log_predictive (float): log prior predictive at x_i
        params (PYParams): Process parameters

    Returns:
        np.ndarray: log((n_j - sigma) K_j) for each j, then log((theta + sigma k) g)
    """
    k = counts.size
    log_w = np.empty(k + 1)
    log_w[:k] = np.log(counts - params.sigma) + log_kernels
    # With no other cluster the new-cluster move is the only one
    log_w[k] = (np.log(params.fresh_strength(k)) if k else 0.0) + log_predictive
    return log_w


def marginal_step(rng: RngStream, state: AllocationState, data: np.ndarray, params: PYParams,
                  base: BaseMeasure) -> AllocationState:
    """
    One sweep of the marginal (urn-based) sampler.

    Each observation leaves its cluster and rejoins cluster j with weight
    (n_j - sigma) K(x_i; theta_j), or opens a new cluster with weight
    (theta + sigma k) times the prior predictive at x_i; a new cluster's
    atom is drawn from the single-observation posterior.

    Args:
        rng (RngStream): Stream of this iteration
        state (AllocationState): Current allocation
        data (np.ndarray): Observations, shape (n, d)
        params (PYParams): Process parameters
        base (BaseMeasure): Conjugate base measure

    Returns:
        AllocationState: State after the sweep and the atom refresh

    Raises:
        DegenerateLikelihoodError: If an observation has no finite weight
    """
    gen = rng.generator
    labels = state.labels.copy()
    counts = state.counts.astype(float)
    atoms = state.atoms
    log_predictive = base.log_marginal_likelihood(data)
    uniforms = gen.random(data.shape[0])

    for i in range(data.shape[0]):
        j_old = labels[i]
        counts[j_old] -= 1
        if counts[j_old] == 0:
            # Last member left: drop the cluster and shift labels above it
            counts = np.delete(counts, j_old)
            atoms = atoms.delete(j_old)
            labels[labels > j_old] -= 1
        k = counts.size

        log_kernels = atoms.log_kernel(data[i:i + 1])[0] if k else np.empty(0)
        log_w = marginal_log_weights(counts, log_kernels, log_predictive[i], params)
        top = log_w.max()
        if not np.isfinite(top):
            raise DegenerateLikelihoodError(f"All allocation weights vanish for observation {i}")
        cumulative = np.cumsum(np.exp(log_w - top))
        j_new = int(min(np.searchsorted(cumulative, uniforms[i] * cumulative[-1], side='right'), k))

        if j_new == k:
            atom = base.posterior_draw(rng, data[i:i + 1])
            atoms = atoms.append(atom)
            counts = np.append(counts, 1.0)
        else:
            counts[j_new] += 1
        labels[i] = j_new

    refreshed = base.refresh_atoms(rng, data, labels, counts.size)
    return AllocationState(labels, refreshed)


def urn_density(state: AllocationState, params: PYParams, base: BaseMeasure) -> MixtureRealization:
    """Conditional-mean density sum (n_j - sigma)/(theta + n) K + (theta + k sigma)/(theta + n) g."""
    total = params.theta + state.n
    weights = (state.counts - params.sigma) / total
    return MixtureRealization(weights, state.atoms, params.fresh_strength(state.k) / total, base)


class MarginalSampler(BaseSampler):
    """
    Marginal sampler for exchangeable Pitman-Yor mixtures.

    Attributes:
        params (PYParams): Process parameters
    """

    def __init__(self, data: np.ndarray, base: BaseMeasure, params: PYParams, **_: Any):
        super().__init__('marginal', data, base, threads=1)
        self.params = params

    def initialize(self, rng: RngStream) -> AllocationState:
        atom = self.base.posterior_draw(rng, self.data)
        return AllocationState(np.zeros(self.n, dtype=np.int64), AtomArray.from_atoms([atom]))

    def step(self, rng: RngStream, state: AllocationState) -> StepResult:
        new_state = marginal_step(rng, state, self.data, self.params, self.base)
        self._advance()
        return StepResult(new_state, urn_density(new_state, self.params, self.base))

    def get_metadata(self) -> Dict[str, Any]:
        metadata = super().get_metadata()
        metadata['params'] = self.params.to_dict()
        return metadata
