"""
Pitman-Yor Process Primitives.

Predictive urn, stick-breaking, the Dirichlet posterior of the weights given
a partition, and the auxiliary urn sample used as importance proposal.
Distinct values are tracked by integer labels, never by comparing atoms.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-16 12:18:46
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .exceptions import ParameterDomainError
from .kernels import Atom, AtomArray, BaseMeasure
from .models.params import PartitionCounts, PYParams
from .randcore import RngStream, dirichlet_draw

logger = logging.getLogger(__name__)

DEFAULT_STICK_CAP = 10 ** 8
_FIRST_CHUNK = 16
_MAX_CHUNK = 1 << 20


@dataclass
class StickPrefix:
    """
    A finite stick-breaking prefix.

    Attributes:
        v (np.ndarray): Stick variables V_1..V_L
        log_leftover (float): log prod_{l<=L} (1 - V_l)
        cap_hit (bool): Whether the cap stopped the extension
    """
    v: np.ndarray
    log_leftover: float
    cap_hit: bool = False

    @property
    def weights(self) -> np.ndarray:
        log_remaining = np.concatenate([[0.0], np.cumsum(np.log1p(-self.v))[:-1]])
        return self.v * np.exp(log_remaining)

    @property
    def leftover(self) -> float:
        return float(np.exp(self.log_leftover))


def draw_sticks(rng: RngStream, params: PYParams, first_index: int, size: int) -> np.ndarray:
    """Draw V_j ~ Beta(1 - sigma, theta + j sigma) for j = first_index, ..., first_index + size - 1."""
    j = np.arange(first_index, first_index + size, dtype=float)
    return rng.generator.beta(1.0 - params.sigma, params.theta + j * params.sigma)


def extend_sticks(rng: RngStream, params: PYParams, log_stop: float, first_index: int = 1,
                  log_leftover: float = 0.0, limit: int = DEFAULT_STICK_CAP) -> StickPrefix:
    """
    Draw sticks until the leftover mass falls below exp(log_stop).

    Sticks are drawn in chunks of growing size; draws past the stopping
    index are discarded.

    Args:
        rng (RngStream): Source of randomness
        params (PYParams): Process parameters
        log_stop (float): Log of the stopping mass
        first_index (int): One-based index of the first new stick
        log_leftover (float): Log leftover mass before the first new stick
        limit (int): Maximum number of new sticks

    Returns:
        StickPrefix: New sticks, updated log leftover and the cap flag
    """
    pieces = []
    drawn = 0
    while log_leftover >= log_stop:
        if drawn >= limit:
            return StickPrefix(np.concatenate(pieces) if pieces else np.empty(0), log_leftover, True)
        chunk = int(min(max(_FIRST_CHUNK, drawn), _MAX_CHUNK, limit - drawn))
        v = draw_sticks(rng, params, first_index + drawn, chunk)
        running = log_leftover + np.cumsum(np.log1p(-v))
        below = np.flatnonzero(running < log_stop)
        keep = int(below[0]) + 1 if below.size else chunk
        pieces.append(v[:keep])
        log_leftover = float(running[keep - 1])
        drawn += keep
    return StickPrefix(np.concatenate(pieces) if pieces else np.empty(0), log_leftover, False)


def stick_breaking_prefix(rng: RngStream, params: PYParams, stop_mass: float,
                          cap: int = DEFAULT_STICK_CAP) -> StickPrefix:
    """
    Stick-breaking weights until the leftover mass drops below stop_mass.

    Args:
        rng (RngStream): Source of randomness
        params (PYParams): Process parameters
        stop_mass (float): Stopping mass in (0, 1]
        cap (int): Safety cap on the number of sticks

    Returns:
        StickPrefix: Weights p_1..p_L via `.weights`, leftover via `.leftover`

    Raises:
        ParameterDomainError: If stop_mass is outside (0, 1]
    """
    if not 0.0 < stop_mass <= 1.0:
        raise ParameterDomainError(f"stop_mass must lie in (0, 1], got {stop_mass}")
    prefix = extend_sticks(rng, params, np.log(stop_mass), limit=cap)
    if prefix.cap_hit:
        logger.warning("Stick-breaking prefix stopped at the cap of %d sticks", cap)
    return prefix


def urn_predictive_draw(rng: RngStream, counts: PartitionCounts, params: PYParams,
                        base: BaseMeasure) -> Union[int, Atom]:
    """
    One draw from the Pitman-Yor predictive urn.

    Args:
        rng (RngStream): Source of randomness
        counts (PartitionCounts): Current partition
        params (PYParams): Process parameters
        base (BaseMeasure): Source of fresh atoms

    Returns:
        Union[int, Atom]: Index of an existing cluster, or a fresh atom
    """
    k = counts.k
    total = params.theta + counts.n
    u = rng.generator.random() * total
    threshold = params.fresh_strength(k)
    if k == 0 or u < threshold:
        return base.prior_draw(rng, 1)[0]
    cumulative = threshold + np.cumsum(counts.as_array() - params.sigma)
    return int(min(np.searchsorted(cumulative, u, side='right'), k - 1))


def urn_partition(rng: RngStream, n: int, params: PYParams, theta_offset_k: int = 0) -> np.ndarray:
    """
    Labels of n sequential draws from the predictive urn.

    Args:
        rng (RngStream): Source of randomness
        n (int): Number of draws
        params (PYParams): Process parameters
        theta_offset_k (int): Extra k in the strength theta + sigma k, used
            for the updated urn PY(sigma, theta + sigma k)

    Returns:
        np.ndarray: Zero-based label of each draw, in order of first appearance
    """
    strength = params.theta + params.sigma * theta_offset_k
    labels = np.empty(n, dtype=np.int64)
    sizes = []
    uniforms = rng.generator.random(n)
    for i in range(n):
        k = len(sizes)
        fresh = strength + params.sigma * k
        u = uniforms[i] * (strength + i)
        if k == 0 or u < fresh:
            labels[i] = k
            sizes.append(1)
            continue
        u -= fresh
        j = 0
        while j < k - 1 and u >= sizes[j] - params.sigma:
            u -= sizes[j] - params.sigma
            j += 1
        labels[i] = j
        sizes[j] += 1
    return labels


def posterior_weights_draw(rng: RngStream, counts: PartitionCounts, params: PYParams) -> np.ndarray:
    """
    Draw (p0, p1, ..., pk) ~ Dirichlet(theta + k sigma, n_1 - sigma, ..., n_k - sigma).

    Returns:
        np.ndarray: Simplex vector of length k + 1; (1.0) when k = 0
    """
    if counts.k == 0:
        return np.ones(1)
    alpha = np.concatenate([[params.fresh_strength(counts.k)], counts.as_array() - params.sigma])
    return dirichlet_draw(rng, alpha)


def auxiliary_sample(rng: RngStream, m: int, k: int, params: PYParams,
                     base: BaseMeasure) -> Tuple[AtomArray, np.ndarray]:
    """
    Draw m exchangeable values from the PY(sigma, theta + sigma k) urn.

    Args:
        rng (RngStream): Source of randomness
        m (int): Auxiliary sample size
        k (int): Number of fixed atoms shifting the strength
        params (PYParams): Process parameters
        base (BaseMeasure): Source of fresh atoms

    Returns:
        Tuple[AtomArray, np.ndarray]: Distinct atoms s* and their multiplicities

    Raises:
        ParameterDomainError: If m < 1
    """
    if m < 1:
        raise ParameterDomainError(f"Auxiliary sample size must be positive, got {m}")
    labels = urn_partition(rng, m, params, theta_offset_k=k)
    multiplicities = np.bincount(labels)
    return base.prior_draw(rng, multiplicities.size), multiplicities


def expected_cluster_count(n: int, params: PYParams) -> float:
    """
    Expected number of distinct values among n urn draws.

    Iterates E[K_{i+1}] = E[K_i] + (theta + sigma E[K_i]) / (theta + i).
    """
    if n < 1:
        raise ParameterDomainError(f"n must be positive, got {n}")
    expected = 1.0
    for i in range(1, n):
        expected += (params.theta + params.sigma * expected) / (params.theta + i)
    return expected


def log_xi_sequence(params: PYParams, size: int) -> np.ndarray:
    """
    Log of xi_j = E[p_j] for j = 1..size.

    Uses xi_1 = (1 - sigma) / (theta + 1) and
    xi_{k+1} = xi_k (theta + k sigma) / (theta + 1 + k sigma).
    """
    if size == 0:
        return np.empty(0)
    k = np.arange(1, size, dtype=float)
    steps = np.log(params.theta + k * params.sigma) - np.log(params.theta + 1.0 + k * params.sigma)
    first = np.log1p(-params.sigma) - np.log(params.theta + 1.0)
    return first + np.concatenate([[0.0], np.cumsum(steps)])


def log_xi_tail(params: PYParams, size: int) -> float:
    """Log of 1 - sum_{j<=size} xi_j = prod_{l<=size} E[1 - V_l]."""
    l = np.arange(1, size + 1, dtype=float)
    return float(np.sum(np.log(params.theta + l * params.sigma)
                        - np.log(params.theta + 1.0 + (l - 1.0) * params.sigma)))


def xi_extent(params: PYParams, log_stop: float, current: int, cap: int) -> Tuple[int, bool]:
    """
    Smallest size K >= current whose xi tail mass drops to exp(log_stop) or below.

    Args:
        params (PYParams): Process parameters
        log_stop (float): Log of the stopping mass
        current (int): Number of sticks already present
        cap (int): Maximum number of sticks

    Returns:
        Tuple[int, bool]: The size and whether the cap stopped the search
    """
    log_tail = log_xi_tail(params, current)
    size = current
    chunk = _FIRST_CHUNK
    while log_tail > log_stop:
        if size >= cap:
            return cap, True
        count = int(min(chunk, cap - size))
        l = np.arange(size + 1, size + count + 1, dtype=float)
        running = log_tail + np.cumsum(np.log(params.theta + l * params.sigma)
                                       - np.log(params.theta + 1.0 + (l - 1.0) * params.sigma))
        below = np.flatnonzero(running <= log_stop)
        if below.size:
            return size + int(below[0]) + 1, False
        log_tail = float(running[-1])
        size += count
        chunk = min(chunk * 2, _MAX_CHUNK)
    return size, False
