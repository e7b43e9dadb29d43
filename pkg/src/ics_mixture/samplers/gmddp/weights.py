"""
GM-DDP Weight Updates.

Prior draws and the full conditional of the idiosyncratic weights
w = (w_1, ..., w_L), and the coordinate-wise random-walk Metropolis updater
that samples them on the logit scale.

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 10:02:51
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.special import expit, logit

from ...exceptions import ParameterDomainError, SamplerError
from ...models.params import GMDDPParams
from ...models.state import GMDDPState
from ...randcore import RngStream, log_gamma_draw

logger = logging.getLogger(__name__)

TARGET_ACCEPTANCE = 0.44
_UPPER = np.nextafter(1.0, 0.0)
_LOWER = np.finfo(float).tiny


def gmddp_prior_weights(rng: RngStream, params: GMDDPParams) -> np.ndarray:
    """
    Draw w from its multivariate beta prior.

    w_l = G_l / (G_l + G_0) with G_l ~ Gamma(theta z) for each group and a
    shared G_0 ~ Gamma(theta (1 - z)).

    Args:
        rng (RngStream): Source of randomness
        params (GMDDPParams): Process parameters

    Returns:
        np.ndarray: Weights strictly inside (0, 1), shape (L,)
    """
    log_groups = log_gamma_draw(rng, np.full(int(params.L), params.idiosyncratic_mass))
    log_common = log_gamma_draw(rng, params.common_mass)
    return np.clip(expit(log_groups - log_common), _LOWER, _UPPER)


def log_prior_density(v: np.ndarray, params: GMDDPParams) -> float:
    """Unnormalized log density of the multivariate beta prior at v."""
    a = params.idiosyncratic_mass
    odds = v / (1.0 - v)
    exponent = params.L * a + params.common_mass
    return float(np.sum((a - 1.0) * np.log(v) - (a + 1.0) * np.log1p(-v))
                 - exponent * np.log1p(odds.sum()))


def _log_likelihood(v: np.ndarray, groups: np.ndarray, log_q_idio: np.ndarray,
                    log_q_common: np.ndarray) -> float:
    if groups.size == 0:
        return 0.0
    log_v = np.log(v)[groups]
    log_1mv = np.log1p(-v)[groups]
    return float(np.logaddexp(log_v + log_q_idio, log_1mv + log_q_common).sum())


def mixture_log_terms(state: GMDDPState, data: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-observation log densities under the idiosyncratic and common summaries.

    Args:
        state (GMDDPState): State carrying the summaries of the current step
        data (np.ndarray): Observations, shape (n, d)

    Returns:
        Tuple[np.ndarray, np.ndarray]: log q^(l) at each observation's own
            group process, and log q^(0) under the common process

    Raises:
        SamplerError: If the state has no summaries but data are present
    """
    n = data.shape[0]
    if n == 0:
        return np.empty(0), np.empty(0)
    if len(state.summaries) != state.L + 1:
        raise SamplerError("The w full conditional needs one summary per process")
    log_common = state.summaries[0].log_likelihood_terms(data)
    log_idio = np.empty(n)
    for group in range(state.L):
        members = np.flatnonzero(state.groups == group)
        if members.size:
            log_idio[members] = state.summaries[group + 1].log_likelihood_terms(data[members])
    return log_idio, log_common


def w_logdensity_fullcond(v, state: GMDDPState, params: GMDDPParams, data: np.ndarray) -> float:
    """
    Log full conditional of w, up to an additive constant.

    Each observation in group l contributes log(v_l q^(l) + (1 - v_l) q^(0)),
    with q^(l) and q^(0) the mixture densities of the current summaries of
    the group's own process and of the common process.

    Args:
        v: Point in the open cube (0, 1)^L
        state (GMDDPState): State with the summaries of the current step
        params (GMDDPParams): Process parameters
        data (np.ndarray): Observations, shape (n, d)

    Returns:
        float: Log density

    Raises:
        ParameterDomainError: If v lies outside the open cube
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (int(params.L),):
        raise ParameterDomainError(f"v must have {params.L} coordinates, got shape {v.shape}")
    if np.any((v <= 0) | (v >= 1)):
        raise ParameterDomainError(f"v must lie strictly inside (0, 1)^L, got {v}")
    log_idio, log_common = mixture_log_terms(state, data)
    groups = state.groups if data.shape[0] else np.empty(0, dtype=np.int64)
    return log_prior_density(v, params) + _log_likelihood(v, groups, log_idio, log_common)


def fullcond_target(params: GMDDPParams, groups: np.ndarray, log_q_idio: np.ndarray,
                    log_q_common: np.ndarray) -> Callable[[np.ndarray], float]:
    """Full conditional of w with the summary densities frozen."""
    def target(v: np.ndarray) -> float:
        return log_prior_density(v, params) + _log_likelihood(v, groups, log_q_idio, log_q_common)
    return target


class WeightUpdater:
    """
    Coordinate-wise random-walk Metropolis on logit(w).

    During the first `adapt_steps` updates each coordinate's log step size
    moves toward the target acceptance rate; afterwards it is frozen.

    Attributes:
        L (int): Number of coordinates
        adapt_steps (int): Number of adaptive updates
        log_step (np.ndarray): Log proposal scale per coordinate
    """

    def __init__(self, L: int, adapt_steps: int = 0, initial_step: float = 1.0):
        if L < 1:
            raise ParameterDomainError(f"WeightUpdater needs at least one coordinate, got {L}")
        self.L = int(L)
        self.adapt_steps = max(0, int(adapt_steps))
        self.log_step = np.full(self.L, np.log(initial_step))
        self._updates = 0
        self._accepted = np.zeros(self.L, dtype=np.int64)
        self._proposed = np.zeros(self.L, dtype=np.int64)

    @property
    def adapting(self) -> bool:
        return self._updates < self.adapt_steps

    def update(self, rng: RngStream, w: np.ndarray, log_target: Callable[[np.ndarray], float]) -> np.ndarray:
        """
        One sweep over the coordinates.

        Args:
            rng (RngStream): Source of randomness
            w (np.ndarray): Current weights
            log_target (Callable[[np.ndarray], float]): Log density in w

        Returns:
            np.ndarray: Updated weights
        """
        gen = rng.generator
        w = np.array(w, dtype=float)
        current = log_target(w) + np.sum(np.log(w) + np.log1p(-w))
        steps = gen.standard_normal(self.L)
        uniforms = gen.random(self.L)
        rate = (self._updates + 1.0) ** -0.6

        for l in range(self.L):
            proposal = w.copy()
            proposal[l] = np.clip(expit(logit(w[l]) + np.exp(self.log_step[l]) * steps[l]), _LOWER, _UPPER)
            # Jacobian of the logit transform
            candidate = log_target(proposal) + np.sum(np.log(proposal) + np.log1p(-proposal))
            accept_prob = float(np.exp(min(0.0, candidate - current)))
            accepted = uniforms[l] < accept_prob
            if accepted:
                w, current = proposal, candidate
            if self.adapting:
                self.log_step[l] += rate * (accept_prob - TARGET_ACCEPTANCE)
            else:
                self._proposed[l] += 1
                self._accepted[l] += int(accepted)

        self._updates += 1
        if self._updates == self.adapt_steps:
            logger.debug("w proposal scales frozen at %s", np.round(np.exp(self.log_step), 4).tolist())
        return w

    def acceptance_rates(self) -> List[Optional[float]]:
        """Post-adaptation acceptance rate per coordinate, None before any."""
        return [float(a / p) if p else None for a, p in zip(self._accepted, self._proposed)]

    def to_dict(self) -> Dict[str, object]:
        return {
            'adapt_steps': self.adapt_steps,
            'step_sizes': np.exp(self.log_step).tolist(),
            'acceptance_rates': self.acceptance_rates(),
        }
