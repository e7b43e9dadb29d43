"""
Random Core Module.

Reproducible random-variate generation for every distribution the samplers
need. Streams are keyed by a seed and a path of integer indices (iteration,
unit, ...) and hand out counter-based Philox generators, so any substream can
be derived without touching shared state.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-16 18:11:02
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from .exceptions import DegenerateLikelihoodError, ParameterDomainError

_UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """
    A reproducible random stream.

    Two streams with the same seed and key produce identical variate
    sequences. A stream owns its generator and must not be shared between
    concurrent workers; derive one substream per worker instead.

    Attributes:
        seed (int): 64-bit unsigned root seed
        key (Tuple[int, ...]): Substream path, e.g. (iteration, block)
    """
    seed: int
    key: Tuple[int, ...] = ()
    _generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) <= _UINT64_MASK:
            raise ParameterDomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if any(int(k) < 0 for k in self.key):
            raise ParameterDomainError(f"substream indices must be nonnegative, got {self.key}")
        sequence = np.random.SeedSequence(entropy=int(self.seed), spawn_key=tuple(int(k) for k in self.key))
        object.__setattr__(self, '_generator', np.random.Generator(np.random.Philox(sequence)))

    @property
    def generator(self) -> np.random.Generator:
        """Numpy generator backing this stream."""
        return self._generator

    @property
    def stream_id(self) -> int:
        """64-bit identifier derived from the substream path."""
        sequence = np.random.SeedSequence(entropy=int(self.seed), spawn_key=tuple(int(k) for k in self.key))
        words = sequence.generate_state(2, dtype=np.uint32)
        return (int(words[0]) << 32) | int(words[1])

    def substream(self, *indices: int) -> 'RngStream':
        """
        Derive a child stream.

        The child depends only on (seed, key + indices), never on how much
        of the parent stream has been consumed.

        Args:
            *indices (int): Indices appended to the substream path

        Returns:
            RngStream: Independent child stream
        """
        return RngStream(self.seed, self.key + tuple(int(i) for i in indices))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, key={self.key})"


def dirichlet_draw(rng: RngStream, alpha) -> np.ndarray:
    """
    Draw from a Dirichlet distribution.

    Gamma variates are generated in log-space with the boost
    G(a) = G(a + 1) * U^(1/a), so tiny concentration parameters do not
    collapse the whole vector to zeros.

    Args:
        rng (RngStream): Source of randomness
        alpha: Positive concentration parameters

    Returns:
        np.ndarray: Simplex vector with the length of alpha

    Raises:
        ParameterDomainError: If alpha is empty or has a nonpositive entry
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    if alpha.size == 0:
        raise ParameterDomainError("Dirichlet parameter vector must be nonempty")
    if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0):
        raise ParameterDomainError(f"Dirichlet parameters must be positive, got {alpha}")
    if alpha.size == 1:
        return np.ones(1)

    log_gamma = log_gamma_draw(rng, alpha)
    weights = np.exp(log_gamma - logsumexp(log_gamma))
    return weights / weights.sum()


def log_gamma_draw(rng: RngStream, shape) -> np.ndarray:
    """Log of Gamma(shape, 1) variates, boosted through G(a) = G(a + 1) U^(1/a)."""
    shape = np.asarray(shape, dtype=float)
    if np.any(shape <= 0):
        raise ParameterDomainError(f"Gamma shapes must be positive, got {shape}")
    gen = rng.generator
    return np.log(gen.gamma(shape + 1.0)) + np.log1p(-gen.random(shape.shape)) / shape


def beta_draw(rng: RngStream, a, b, size=None):
    """Draw Beta(a, b) variates; a and b may be arrays."""
    if np.any(np.asarray(a) <= 0) or np.any(np.asarray(b) <= 0):
        raise ParameterDomainError(f"Beta parameters must be positive, got a={a}, b={b}")
    return rng.generator.beta(a, b, size=size)


def gamma_draw(rng: RngStream, shape, rate=1.0, size=None):
    """Draw Gamma(shape, rate) variates."""
    if np.any(np.asarray(shape) <= 0) or np.any(np.asarray(rate) <= 0):
        raise ParameterDomainError(f"Gamma parameters must be positive, got shape={shape}, rate={rate}")
    return rng.generator.gamma(shape, 1.0 / np.asarray(rate, dtype=float), size=size)


def categorical_draw(rng: RngStream, weights) -> int:
    """
    Draw an index with probability proportional to its weight.

    Args:
        rng (RngStream): Source of randomness
        weights: Nonnegative weights, not all zero

    Returns:
        int: Zero-based index

    Raises:
        ParameterDomainError: If a weight is negative or all weights vanish
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or weights.size == 0:
        raise ParameterDomainError("Categorical weights must be a nonempty vector")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise ParameterDomainError(f"Categorical weights must be finite and nonnegative, got {weights}")
    total = weights.sum()
    if total <= 0:
        raise ParameterDomainError("Categorical weights are all zero")
    cumulative = np.cumsum(weights)
    index = int(np.searchsorted(cumulative, rng.generator.random() * total, side='right'))
    # Guard against landing on a trailing zero-weight entry through rounding
    index = min(index, int(np.flatnonzero(weights)[-1]))
    while weights[index] == 0:
        index += 1
    return index


def categorical_from_log_weights(uniforms: np.ndarray, log_weights: np.ndarray) -> np.ndarray:
    """
    Row-wise categorical draws from unnormalized log-weights.

    Each row is shifted by its maximum before exponentiation. Rows whose
    weights are all -inf have no admissible outcome.

    Args:
        uniforms (np.ndarray): One uniform in [0, 1) per row
        log_weights (np.ndarray): Matrix of shape (rows, outcomes)

    Returns:
        np.ndarray: Zero-based outcome index per row

    Raises:
        DegenerateLikelihoodError: If a row has no finite weight
    """
    log_weights = np.atleast_2d(log_weights)
    row_max = log_weights.max(axis=1)
    bad = ~np.isfinite(row_max)
    if np.any(bad):
        rows = np.flatnonzero(bad)
        raise DegenerateLikelihoodError(
            f"All allocation weights vanish for {rows.size} row(s), first row {int(rows[0])}"
        )
    weights = np.exp(log_weights - row_max[:, None])
    cumulative = np.cumsum(weights, axis=1)
    targets = np.asarray(uniforms)[:, None] * cumulative[:, -1:]
    choice = (cumulative <= targets).sum(axis=1)
    choice = np.minimum(choice, log_weights.shape[1] - 1)
    # A zero-weight outcome can only be hit through rounding at the top end
    stuck = weights[np.arange(choice.size), choice] == 0
    if np.any(stuck):
        for row in np.flatnonzero(stuck):
            choice[row] = int(np.flatnonzero(weights[row])[-1])
    return choice


def _log_zolotarev(u: np.ndarray, sigma: float) -> np.ndarray:
    """Log of the Zolotarev function A(u) on (0, pi)."""
    return (sigma / (1.0 - sigma)) * np.log(np.sin(sigma * u)) \
        + np.log(np.sin((1.0 - sigma) * u)) \
        - np.log(np.sin(u)) / (1.0 - sigma)


def _angle_draws(gen: np.random.Generator, sigma: float, theta: float, size: int) -> np.ndarray:
    """
    Draw angles from the density proportional to A(u)^(-c), c = theta (1-sigma)/sigma.

    For theta >= 0, A is increasing so the bound A(u)^(-c) <= A(0+)^(-c)
    gives a uniform-proposal rejection sampler. For theta < 0 the bound
    sin(u) >= u (pi - u) / pi gives a symmetric-beta proposal.
    """
    c = theta * (1.0 - sigma) / sigma
    angles = np.empty(size)
    pending = np.arange(size)
    log_a0 = (sigma / (1.0 - sigma)) * np.log(sigma) + np.log1p(-sigma)
    while pending.size:
        count = pending.size
        if theta >= 0:
            u = np.pi * (1.0 - gen.random(count))
            log_accept = -c * (_log_zolotarev(u, sigma) - log_a0)
        else:
            a = -theta / sigma
            u = np.pi * gen.beta(1.0 - a, 1.0 - a, size=count)
            log_accept = -c * _log_zolotarev(u, sigma) + a * np.log(u * (np.pi - u) / np.pi)
        accepted = np.log(1.0 - gen.random(count)) <= np.minimum(log_accept, 0.0)
        accepted &= (u > 0) & (u < np.pi)
        angles[pending[accepted]] = u[accepted]
        pending = pending[~accepted]
    return angles


def tilted_stable_draw(rng: RngStream, sigma: float, theta: float, size: Optional[int] = None,
                       log: bool = False) -> Union[float, np.ndarray]:
    """
    Draw from the polynomially tilted positive stable law.

    The target density is proportional to t^(-theta) f(t), where f is the
    positive sigma-stable density with Laplace transform exp(-lambda^sigma).
    The Kanter representation T = (A(U) / E)^((1-sigma)/sigma) turns the
    tilt into a Gamma(1 + theta (1-sigma)/sigma) law for E and a tilted
    angle law for U, both sampled exactly.

    Args:
        rng (RngStream): Source of randomness
        sigma (float): Stability index in (0, 1)
        theta (float): Tilt, greater than -sigma
        size (Optional[int]): Number of draws; None returns a scalar
        log (bool): Return log T instead of T

    Returns:
        Union[float, np.ndarray]: Draw(s) of T (or log T)

    Raises:
        ParameterDomainError: If sigma is outside (0, 1) or theta <= -sigma
    """
    if not 0.0 < sigma < 1.0:
        raise ParameterDomainError(f"sigma must lie strictly inside (0, 1), got {sigma}")
    if theta <= -sigma:
        raise ParameterDomainError(f"theta must exceed -sigma, got theta={theta}, sigma={sigma}")

    count = 1 if size is None else int(size)
    gen = rng.generator
    angles = _angle_draws(gen, sigma, theta, count)
    shape = 1.0 + theta * (1.0 - sigma) / sigma
    log_e = np.log(gen.gamma(shape, 1.0, size=count))
    log_t = ((1.0 - sigma) / sigma) * (_log_zolotarev(angles, sigma) - log_e)
    out = log_t if log else np.exp(log_t)
    return float(out[0]) if size is None else out
