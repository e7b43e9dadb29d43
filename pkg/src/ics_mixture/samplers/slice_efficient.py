"""
Slice-Efficient Samplers.

Conditional samplers that keep an explicit stick-breaking prefix in the
state and use uniform slice variables to make every allocation a finite
choice. The dependent variant slices on the random weights p_j, the
independent variant on the deterministic sequence xi_j = E[p_j].

Stick indices are never permuted: the stick full conditional depends on the
index, so empty sticks below the largest occupied one stay in place with
prior-drawn atoms. The allocation view compacts occupied sticks in stick
order.

Created by: Barrhann
Created on: 2026-10-14
Last Updated: 2026-10-17 08:31:26
"""

import concurrent.futures
import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..exceptions import SamplerError
from ..kernels import AtomArray, BaseMeasure, MixtureRealization
from ..models.params import PYParams
from ..models.state import SliceState, StepResult
from ..pyprocess import draw_sticks, extend_sticks, log_xi_sequence, xi_extent
from ..randcore import RngStream, categorical_from_log_weights
from .base_sampler import BaseSampler, allocate_in_blocks

logger = logging.getLogger(__name__)

VARIANTS = ('dependent', 'independent')
_ROW_CHUNK = 64


def stick_update(rng: RngStream, labels: np.ndarray, k: int, params: PYParams) -> np.ndarray:
    """
    Draw v_j ~ Beta(1 - sigma + n_j, theta + j sigma + n_j^+) for j = 1..k.

    n_j^+ counts the observations on sticks beyond j.
    """
    counts = np.bincount(labels, minlength=k)[:k].astype(float)
    beyond = labels.size - np.cumsum(counts)
    j = np.arange(1, k + 1, dtype=float)
    return rng.generator.beta(1.0 - params.sigma + counts, params.theta + j * params.sigma + beyond)


def draw_slices(rng: RngStream, labels: np.ndarray, bounds: np.ndarray) -> np.ndarray:
    """Uniform slice variables u_i on (0, bound of the occupied stick)."""
    u = rng.generator.random(labels.size) * bounds[labels]
    return np.maximum(u, np.finfo(float).tiny)


def _slice_block(data: np.ndarray, u: np.ndarray, atoms: AtomArray, bounds: np.ndarray,
                 log_factor: Optional[np.ndarray]):
    """
    Block draw over the sticks admissible for each row.

    Admissible sticks are those with bound > u_i. Sticks are sorted by
    decreasing bound, so each row's admissible set is a prefix; rows are
    processed in chunks sized by their widest prefix.
    """
    order = np.argsort(-bounds, kind='stable')
    sorted_bounds = bounds[order]
    sorted_atoms = atoms.take(order).prepare()
    sorted_factor = None if log_factor is None else log_factor[order]

    def draw_block(rows: slice, uniforms: np.ndarray) -> np.ndarray:
        block_u = u[rows]
        widths = np.searchsorted(-sorted_bounds, -block_u, side='left')
        if np.any(widths == 0):
            raise SamplerError("A slice variable admits no stick")
        choices = np.empty(block_u.size, dtype=np.int64)
        by_width = np.argsort(widths, kind='stable')
        block_data = data[rows]
        for start in range(0, by_width.size, _ROW_CHUNK):
            members = by_width[start:start + _ROW_CHUNK]
            width = int(widths[members].max())
            log_w = sorted_atoms.head(width).log_kernel(block_data[members])
            if sorted_factor is not None:
                log_w = log_w + sorted_factor[None, :width]
            log_w[np.arange(width)[None, :] >= widths[members][:, None]] = -np.inf
            choices[members] = categorical_from_log_weights(uniforms[members], log_w)
        return order[choices]

    return draw_block


def slice_step(rng: RngStream, state: SliceState, data: np.ndarray, params: PYParams,
               base: BaseMeasure, variant: str, jump_cap: int,
               executor: Optional[concurrent.futures.Executor] = None) -> Tuple[SliceState, int, bool]:
    """
    One slice-efficient iteration.

    The slice variables carried in `state` were drawn at the end of the
    previous iteration given the current allocation and sticks; this step
    extends the sticks until the slices are covered, reallocates, truncates
    to the largest occupied stick, refreshes atoms and sticks, and finally
    draws new slice variables.

    Args:
        rng (RngStream): Stream of this iteration
        state (SliceState): Current state
        data (np.ndarray): Observations, shape (n, d)
        params (PYParams): Process parameters
        base (BaseMeasure): Conjugate base measure
        variant (str): 'dependent' or 'independent'
        jump_cap (int): Maximum number of active sticks
        executor (Optional[concurrent.futures.Executor]): Pool for the allocation blocks

    Returns:
        Tuple[SliceState, int, bool]: New state, active sticks after the
            extension, and whether the cap stopped the extension
    """
    if variant not in VARIANTS:
        raise SamplerError(f"Unknown slice variant '{variant}'")
    if jump_cap < state.k_active:
        raise SamplerError(f"jump_cap {jump_cap} is below the {state.k_active} active sticks")

    u = state.u
    log_stop = float(np.log(u.min()))
    k_active = state.k_active

    if variant == 'dependent':
        prefix = extend_sticks(rng, params, log_stop, first_index=k_active + 1,
                               log_leftover=state.log_leftover, limit=jump_cap - k_active)
        v = np.concatenate([state.v, prefix.v])
        cap_hit = prefix.cap_hit
    else:
        size, cap_hit = xi_extent(params, log_stop, k_active, jump_cap)
        v = np.concatenate([state.v, draw_sticks(rng, params, k_active + 1, size - k_active)])

    new_sticks = v.size - k_active
    atoms = state.atoms
    if new_sticks:
        atoms = AtomArray.concatenate([atoms, base.prior_draw(rng, new_sticks)])
    jumps = int(v.size)

    log_remaining = np.concatenate([[0.0], np.cumsum(np.log1p(-v))[:-1]])
    weights = v * np.exp(log_remaining)
    if variant == 'dependent':
        bounds, log_factor = weights, None
    else:
        log_xi = log_xi_sequence(params, v.size)
        bounds = np.exp(log_xi)
        with np.errstate(divide='ignore'):
            log_factor = np.log(weights) - log_xi

    labels = allocate_in_blocks(rng, data.shape[0], _slice_block(data, u, atoms, bounds, log_factor), executor)

    k = int(labels.max()) + 1
    atoms = base.refresh_atoms(rng, data, labels, k)
    v = stick_update(rng, labels, k, params)
    xi = np.exp(log_xi_sequence(params, k)) if variant == 'independent' else None

    new_state = SliceState(labels, v, atoms, np.empty(0), variant, xi)
    new_state.u = draw_slices(rng, labels, new_state.bounds)
    return new_state, jumps, cap_hit


def stick_density(state: SliceState, base: BaseMeasure) -> MixtureRealization:
    """Density realization sum_j p_j K(.; theta_j) + leftover * prior predictive."""
    return MixtureRealization(state.weights, state.atoms, state.leftover, base)


class SliceEfficientSampler(BaseSampler):
    """
    Dependent or independent slice-efficient sampler.

    Attributes:
        params (PYParams): Process parameters
        variant (str): 'dependent' or 'independent'
        jump_cap (int): Maximum number of active sticks
    """

    def __init__(self, data: np.ndarray, base: BaseMeasure, params: PYParams,
                 variant: str = 'dependent', jump_cap: int = 100_000, threads: int = 1, **_: Any):
        if variant not in VARIANTS:
            raise SamplerError(f"Unknown slice variant '{variant}'. Available: {', '.join(VARIANTS)}")
        super().__init__('slice-dep' if variant == 'dependent' else 'slice-indep', data, base, threads)
        self.params = params
        self.variant = variant
        self.jump_cap = int(jump_cap)
        self._cap_hits = 0

    def initialize(self, rng: RngStream) -> SliceState:
        labels = np.zeros(self.n, dtype=np.int64)
        atoms = AtomArray.from_atoms([self.base.posterior_draw(rng, self.data)])
        v = stick_update(rng, labels, 1, self.params)
        xi = np.exp(log_xi_sequence(self.params, 1)) if self.variant == 'independent' else None
        state = SliceState(labels, v, atoms, np.empty(0), self.variant, xi)
        state.u = draw_slices(rng, labels, state.bounds)
        return state

    def step(self, rng: RngStream, state: SliceState) -> StepResult:
        new_state, jumps, cap_hit = slice_step(rng, state, self.data, self.params, self.base,
                                               self.variant, self.jump_cap, self.executor)
        if cap_hit:
            if self._cap_hits == 0:
                logger.warning("%s: stick extension reached the cap of %d at step %d",
                               self.name, self.jump_cap, self._step_count + 1)
            self._cap_hits += 1
        self._advance()
        return StepResult(new_state, stick_density(new_state, self.base), jumps, cap_hit)

    def get_metadata(self) -> Dict[str, Any]:
        metadata = super().get_metadata()
        metadata.update({
            'params': self.params.to_dict(),
            'variant': self.variant,
            'jump_cap': self.jump_cap,
            'cap_hits': self._cap_hits,
        })
        return metadata
