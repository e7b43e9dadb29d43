"""
Diagnostics Module.

Effective sample size, deviance and pointwise posterior density summaries
with quantile credible bands.

Created by: Barrhann
Created on: 2026-10-14
Last Updated: 2026-10-17 11:12:30
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from numpy.fft import irfft, rfft
from scipy.special import logsumexp

from .exceptions import DegenerateLikelihoodError, DiagnosticsError, ParameterDomainError
from .models.config import DEVIANCE_MODES
from .models.results import DensitySummary
from .models.state import AllocationState

logger = logging.getLogger(__name__)

MIN_TRACE_LENGTH = 10


def autocorrelation(trace: np.ndarray) -> np.ndarray:
    """Sample autocorrelation at lags 0..N-1 via FFT, biased (1/N) normalization."""
    x = np.asarray(trace, dtype=float)
    x = x - x.mean()
    size = x.size
    spectrum = rfft(x, n=2 * size)
    acov = irfft(spectrum * np.conj(spectrum), n=2 * size)[:size]
    return acov / acov[0]


def ess(trace) -> float:
    """
    Effective sample size of a scalar trace.

    The integrated autocorrelation time is estimated with Geyer's initial
    positive sequence: pair sums rho_2m + rho_2m+1 are accumulated until the
    first nonpositive one. Antithetic traces whose estimate exceeds N are
    clipped to N.

    Args:
        trace: Scalar chain values

    Returns:
        float: ESS in (0, N]

    Raises:
        DiagnosticsError: If the trace is shorter than 10 or constant
    """
    x = np.asarray(trace, dtype=float).reshape(-1)
    size = x.size
    if size < MIN_TRACE_LENGTH:
        raise DiagnosticsError(f"ESS needs at least {MIN_TRACE_LENGTH} values, got {size}")
    if not np.all(np.isfinite(x)):
        raise DiagnosticsError("ESS is undefined for a trace with non-finite values")
    if np.ptp(x) == 0:
        raise DiagnosticsError("ESS is undefined for a constant trace")

    rho = autocorrelation(x)
    pairs = rho[:size - size % 2].reshape(-1, 2).sum(axis=1)
    nonpositive = np.flatnonzero(pairs <= 0)
    kept = pairs[:nonpositive[0]] if nonpositive.size else pairs
    tau = 2.0 * kept.sum() - 1.0
    if tau < 1.0:
        logger.warning("ESS estimate exceeds the trace length (tau=%.3f); clipped to N=%d", tau, size)
        return float(size)
    return float(size / tau)


def deviance_from_log_densities(log_density, mode: str = 'log') -> float:
    """
    Deviance from per-observation log mixture densities.

    Args:
        log_density: log f(X_i) per observation
        mode (str): 'log' for -2 sum log f(X_i); 'literal' for -2 sum f(X_i)

    Returns:
        float: Deviance

    Raises:
        DegenerateLikelihoodError: If some density vanishes in log mode
    """
    if mode not in DEVIANCE_MODES:
        raise ParameterDomainError(f"Unknown deviance mode '{mode}'. Available: {', '.join(DEVIANCE_MODES)}")
    log_density = np.asarray(log_density, dtype=float)
    if mode == 'literal':
        return float(-2.0 * np.exp(log_density).sum())
    if np.any(np.isneginf(log_density)) or np.any(np.isnan(log_density)):
        raise DegenerateLikelihoodError("Mixture density vanishes at some observation; log deviance is infinite")
    return float(-2.0 * log_density.sum())


def deviance(state: AllocationState, data: np.ndarray, mode: str = 'log') -> float:
    """
    Deviance of the clustering: mixture sum_j (n_j / n) K(X_i; theta*_j).

    Args:
        state (AllocationState): Allocation covering every observation
        data (np.ndarray): Observations, shape (n, d)
        mode (str): 'log' or 'literal'

    Returns:
        float: Deviance
    """
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    if state.n != data.shape[0]:
        raise DiagnosticsError(f"State covers {state.n} observations, data has {data.shape[0]}")
    log_weights = np.log(state.counts / state.n)
    log_density = logsumexp(state.atoms.log_kernel(data) + log_weights[None, :], axis=1)
    return deviance_from_log_densities(log_density, mode)


def density_summary(realizations: Sequence[np.ndarray], band_level: float = 0.9,
                    axes: Optional[List[np.ndarray]] = None, label: str = 'density') -> DensitySummary:
    """
    Pointwise posterior mean and equal-tailed empirical quantile band.

    Args:
        realizations (Sequence[np.ndarray]): Grid evaluations, one per retained iteration
        band_level (float): Credible level in (0, 1)
        axes (Optional[List[np.ndarray]]): Grid axes; defaults to the index of a flat grid
        label (str): Name of the summarized functional

    Returns:
        DensitySummary: Mean and band on the grid

    Raises:
        DiagnosticsError: With fewer than two realizations or mismatched grids
    """
    if len(realizations) < 2:
        raise DiagnosticsError(f"A density summary needs at least two realizations, got {len(realizations)}")
    shapes = {np.shape(r) for r in realizations}
    if len(shapes) != 1:
        raise DiagnosticsError(f"Realizations live on different grids: {sorted(shapes)}")
    if not 0.0 < band_level < 1.0:
        raise ParameterDomainError(f"band_level must lie in (0, 1), got {band_level}")

    stacked = np.stack([np.asarray(r, dtype=float) for r in realizations])
    if axes is None:
        axes = [np.arange(stacked[0].size, dtype=float)]
    mean = stacked.mean(axis=0)
    tail = (1.0 - band_level) / 2.0
    lower, upper = np.quantile(stacked, [tail, 1.0 - tail], axis=0, method='inverted_cdf')
    return DensitySummary(axes, mean, np.minimum(lower, mean), np.maximum(upper, mean), band_level, label)
