"""
Truncation Study Module.

How many stick-breaking jumps a conditional sampler must draw before the
leftover mass falls below a Beta(1, n) level, with no data involved. The
count M_n is simulated directly up to a cap; beyond it the study falls back
on the asymptotic proxy 1 + L_n with L_n = (B_n T / sigma)^(-sigma/(1-sigma))
for sigma > 0, and on the exact Poisson(theta log 1/B_n) mixture for
sigma = 0.

Created by: Barrhann
Created on: 2026-10-14
Last Updated: 2026-10-17 11:58:40
"""

import concurrent.futures
import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from .exceptions import ParameterDomainError
from .models.params import PYParams
from .models.results import TruncationReport
from .randcore import RngStream, tilted_stable_draw

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 7
BATCH_SIZE = 4096
_MAX_CELLS = 1 << 22


def _log_beta_1n(gen: np.random.Generator, n: int, size: int) -> np.ndarray:
    """log B_n for B_n ~ Beta(1, n), via B = 1 - U^(1/n)."""
    return np.log(-np.expm1(np.log1p(-gen.random(size)) / n))


def _mn_batch(gen: np.random.Generator, n: int, params: PYParams, size: int,
              cap: int) -> Tuple[np.ndarray, np.ndarray]:
    """Direct M_n draws for a batch; columns of sticks are drawn for all live rows at once."""
    log_b = _log_beta_1n(gen, n, size)
    counts = np.full(size, cap, dtype=np.int64)
    done = np.zeros(size, dtype=bool)
    log_left = np.zeros(size)
    index = 1
    width = 16
    while index <= cap and not done.all():
        live = np.flatnonzero(~done)
        width = int(min(width, cap - index + 1, max(1, _MAX_CELLS // live.size)))
        j = np.arange(index, index + width, dtype=float)
        v = gen.beta(1.0 - params.sigma, (params.theta + j * params.sigma)[None, :], size=(live.size, width))
        running = log_left[live, None] + np.cumsum(np.log1p(-v), axis=1)
        below = running < log_b[live, None]
        stopped = below.any(axis=1)
        counts[live[stopped]] = index + np.argmax(below[stopped], axis=1)
        done[live[stopped]] = True
        log_left[live[~stopped]] = running[~stopped, -1]
        index += width
        width *= 2
    return counts, ~done


def _map_batches(rng: RngStream, reps: int, draw: Callable[[RngStream, int], Tuple[np.ndarray, ...]],
                 executor: Optional[concurrent.futures.Executor] = None) -> Tuple[np.ndarray, ...]:
    """Run `draw` over fixed batches of replicates, batch b on rng.substream(b)."""
    sizes = [min(BATCH_SIZE, reps - start) for start in range(0, reps, BATCH_SIZE)]

    def run(batch: int):
        return draw(rng.substream(batch), sizes[batch])

    if executor is None or len(sizes) == 1:
        results = [run(batch) for batch in range(len(sizes))]
    else:
        futures = {executor.submit(run, batch): batch for batch in range(len(sizes))}
        results = [None] * len(sizes)
        for future in concurrent.futures.as_completed(futures):
            results[futures[future]] = future.result()
    return tuple(np.concatenate(parts) for parts in zip(*results))


def sample_Mn(rng: RngStream, n: int, params: PYParams, cap: int = DEFAULT_CAP) -> Tuple[int, bool]:
    """
    One draw of M_n = min{l >= 1 : prod_{j<=l} (1 - V_j) < B_n}.

    Args:
        rng (RngStream): Source of randomness
        n (int): Sample size in B_n ~ Beta(1, n)
        params (PYParams): Process parameters
        cap (int): Maximum number of sticks

    Returns:
        Tuple[int, bool]: The count (the cap when exceeded) and whether the cap was exceeded
    """
    if n < 1 or cap < 1:
        raise ParameterDomainError(f"n and cap must be positive, got n={n}, cap={cap}")
    counts, capped = _mn_batch(rng.generator, int(n), params, 1, int(cap))
    return int(counts[0]), bool(capped[0])


def sample_Mn_batch(rng: RngStream, n: int, params: PYParams, reps: int, cap: int = DEFAULT_CAP,
                    executor: Optional[concurrent.futures.Executor] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Independent M_n draws; returns the counts and the cap flags."""
    if n < 1 or cap < 1 or reps < 1:
        raise ParameterDomainError(f"n, cap and reps must be positive, got n={n}, cap={cap}, reps={reps}")

    def draw(stream: RngStream, size: int) -> Tuple[np.ndarray, np.ndarray]:
        return _mn_batch(stream.generator, int(n), params, size, int(cap))

    return _map_batches(rng, int(reps), draw, executor)


def sample_Mn_poisson_mixture(rng: RngStream, n: int, theta: float, size: int = 1) -> np.ndarray:
    """
    M_n at sigma = 0 through its exact law: 1 + Poisson(theta log(1 / B_n)).

    Args:
        rng (RngStream): Source of randomness
        n (int): Sample size
        theta (float): Dirichlet process strength
        size (int): Number of draws

    Returns:
        np.ndarray: Integer draws of M_n
    """
    if n < 1 or theta <= 0:
        raise ParameterDomainError(f"Need n >= 1 and theta > 0, got n={n}, theta={theta}")
    gen = rng.generator
    log_b = _log_beta_1n(gen, int(n), int(size))
    return 1 + gen.poisson(-theta * log_b)


def sample_Ln(rng: RngStream, n: int, params: PYParams, size: Optional[int] = None,
              log: bool = False):
    """
    Draw the asymptotic proxy L_n = (B_n T / sigma)^(-sigma / (1 - sigma)).

    T is polynomially tilted stable with index sigma and tilt theta, B_n ~
    Beta(1, n), independent.

    Args:
        rng (RngStream): Source of randomness
        n (int): Sample size
        params (PYParams): Process parameters with sigma in (0, 1)
        size (Optional[int]): Number of draws; None returns a scalar
        log (bool): Return log L_n

    Returns:
        Draw(s) of L_n (or log L_n)

    Raises:
        ParameterDomainError: If sigma = 0, where the Poisson law applies
    """
    if params.sigma <= 0.0:
        raise ParameterDomainError("L_n is defined for sigma in (0, 1); use the Poisson mixture at sigma = 0")
    if n < 1:
        raise ParameterDomainError(f"n must be positive, got {n}")
    count = 1 if size is None else int(size)
    sigma = params.sigma
    log_t = tilted_stable_draw(rng, sigma, params.theta, size=count, log=True)
    log_b = _log_beta_1n(rng.generator, int(n), count)
    log_l = -(sigma / (1.0 - sigma)) * (log_b + log_t - np.log(sigma))
    out = log_l if log else np.exp(log_l)
    return float(out[0]) if size is None else out


def expected_Ln(n: int, params: PYParams) -> float:
    """
    Closed-form mean of L_n, finite only for sigma < 1/2.

    With a = sigma / (1 - sigma),
    E[L_n] = sigma^a E[B_n^(-a)] E[T^(-a)], where
    E[B_n^(-a)] = Gamma(1 - a) Gamma(n + 1) / Gamma(n + 1 - a) and
    E[T^(-a)] = Gamma(1 + theta/sigma + 1/(1-sigma)) Gamma(1 + theta)
                / (Gamma(theta + 1/(1-sigma)) Gamma(1 + theta/sigma)).

    Returns:
        float: The mean, or inf for sigma >= 1/2
    """
    sigma, theta = params.sigma, params.theta
    if sigma <= 0.0:
        raise ParameterDomainError("L_n is defined for sigma in (0, 1)")
    if sigma >= 0.5:
        return math.inf
    a = sigma / (1.0 - sigma)
    inv = 1.0 / (1.0 - sigma)
    log_mean = (a * np.log(sigma)
                + gammaln(1.0 - a) + gammaln(n + 1.0) - gammaln(n + 1.0 - a)
                + gammaln(1.0 + theta / sigma + inv) + gammaln(1.0 + theta)
                - gammaln(theta + inv) - gammaln(1.0 + theta / sigma))
    return float(np.exp(log_mean))


def effective_cap(thresholds: Sequence[int], cap: int) -> int:
    """Sticks needed to decide every threshold at or below the cap."""
    reachable = [int(k) for k in thresholds if k <= cap]
    return int(min(cap, max(reachable) + 1)) if reachable else int(cap)


def exceedance_table(rng: RngStream, n: int, params: PYParams, thresholds: Sequence[int], reps: int,
                     cap: int = DEFAULT_CAP,
                     executor: Optional[concurrent.futures.Executor] = None) -> TruncationReport:
    """
    Monte-Carlo estimates of P(M_n > K) for each threshold K.

    M_n is simulated directly for thresholds up to the cap. Larger
    thresholds are served by P(1 + L_n > K) when sigma > 0 and by the
    Poisson mixture when sigma = 0. Reported values are made nonincreasing
    in K, since the direct and proxy estimates come from separate samples.

    Args:
        rng (RngStream): Stream of this (sigma, theta, n) cell
        n (int): Sample size
        params (PYParams): Process parameters
        thresholds (Sequence[int]): Ascending thresholds
        reps (int): Replicates per estimator
        cap (int): Cap on directly simulated sticks
        executor (Optional[concurrent.futures.Executor]): Pool for replicate batches

    Returns:
        TruncationReport: Draws, exceedance estimates and quantiles
    """
    thresholds = [int(k) for k in thresholds]
    if thresholds != sorted(thresholds):
        raise ParameterDomainError(f"Thresholds must be sorted ascending, got {thresholds}")
    if reps < 1 or cap < 1:
        raise ParameterDomainError(f"reps and cap must be positive, got reps={reps}, cap={cap}")

    direct_cap = effective_cap(thresholds, int(cap))
    mn, capped = sample_Mn_batch(rng.substream(0), n, params, reps, direct_cap, executor)

    log_ln = None
    if params.sigma > 0:
        log_ln = _map_batches(rng.substream(1), int(reps),
                              lambda stream, size: (sample_Ln(stream, n, params, size, log=True),),
                              executor)[0]
        proxy_name = 'proxy_ln'
    else:
        proxy_draws = sample_Mn_poisson_mixture(rng.substream(1), n, params.theta, reps)
        proxy_name = 'poisson_mixture'

    exceedance, source, mn_exc, ln_exc = [], [], [], []
    for k in thresholds:
        direct = float(np.mean(mn > k)) if k < direct_cap else float('nan')
        if log_ln is not None:
            proxy = 1.0 if k <= 1 else float(np.mean(log_ln > np.log(k - 1.0)))
            ln_exc.append(proxy)
        else:
            proxy = float(np.mean(proxy_draws > k))
            ln_exc.append(float('nan'))
        mn_exc.append(direct)
        if k < direct_cap:
            exceedance.append(direct)
            source.append('direct')
        else:
            logger.warning("Threshold %d exceeds the direct cap %d at sigma=%s, theta=%s; using %s",
                           k, direct_cap, params.sigma, params.theta, proxy_name)
            exceedance.append(proxy)
            source.append(proxy_name)

    quantiles = dict(zip(('q25', 'median', 'q75'), np.quantile(mn, [0.25, 0.5, 0.75]).tolist()))
    return TruncationReport(
        sigma=params.sigma, theta=params.theta, n=int(n), cap=direct_cap,
        mn_draws=mn, mn_capped=capped, log_ln_draws=log_ln,
        thresholds=thresholds, exceedance=np.minimum.accumulate(exceedance).tolist() if exceedance else [],
        source=source, mn_exceedance=mn_exc, ln_exceedance=ln_exc, quantiles=quantiles,
    )


def truncation_study(seed: int, ns: Sequence[int], sigmas: Sequence[float], thetas: Sequence[float],
                     thresholds: Sequence[int], reps: int, cap: int = DEFAULT_CAP,
                     executor: Optional[concurrent.futures.Executor] = None) -> List[TruncationReport]:
    """
    Exceedance tables over a (sigma, theta, n) grid.

    Cell c of the grid, in sigma-theta-n order, uses RngStream(seed, (c,)).

    Returns:
        List[TruncationReport]: One report per cell
    """
    root = RngStream(seed)
    reports = []
    cell = 0
    for sigma in sigmas:
        for theta in thetas:
            for n in ns:
                params = PYParams(float(sigma), float(theta))
                logger.info("Truncation cell sigma=%s theta=%s n=%s", sigma, theta, n)
                reports.append(exceedance_table(root.substream(cell), int(n), params, thresholds, reps,
                                                cap, executor))
                cell += 1
    return reports


def summarize_reports(reports: Sequence[TruncationReport]) -> List[Dict[str, object]]:
    """Per-cell summaries for run metadata."""
    return [report.get_summary() for report in reports]
