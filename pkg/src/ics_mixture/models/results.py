"""
Result Models.

This module defines the data models handed to the reporting layer:
- DensitySummary: pointwise posterior mean and credible band on a grid
- TruncationReport: jump-count draws and exceedance estimates
- BenchmarkRecord: efficiency measures of one benchmark replicate

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-16 19:30:05
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from ..exceptions import DiagnosticsError, ParameterDomainError


@dataclass
class DensitySummary:
    """
    Posterior density summary on a grid.

    Attributes:
        axes (List[np.ndarray]): Strictly increasing grid per axis
        mean (np.ndarray): Pointwise posterior mean, lattice-shaped
        lower (np.ndarray): Lower band
        upper (np.ndarray): Upper band
        band_level (float): Credible level in (0, 1)
        label (str): Name of the summarized functional
    """
    axes: List[np.ndarray]
    mean: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    band_level: float = 0.9
    label: str = 'density'

    def __post_init__(self):
        self.axes = [np.asarray(axis, dtype=float) for axis in self.axes]
        if not 0.0 < self.band_level < 1.0:
            raise ParameterDomainError(f"band_level must lie in (0, 1), got {self.band_level}")
        for axis in self.axes:
            if axis.size > 1 and np.any(np.diff(axis) <= 0):
                raise DiagnosticsError("Grid axes must be strictly increasing")
        shape = tuple(axis.size for axis in self.axes)
        for name in ('mean', 'lower', 'upper'):
            values = np.asarray(getattr(self, name), dtype=float)
            if values.size != int(np.prod(shape)):
                raise DiagnosticsError(f"{name} does not match the grid size")
            setattr(self, name, values.reshape(shape))
        if np.any(self.lower > self.mean) or np.any(self.mean > self.upper):
            raise DiagnosticsError("Band does not enclose the mean")

    @property
    def dim(self) -> int:
        return len(self.axes)

    def points(self) -> np.ndarray:
        """Grid points in lattice order, shape (G, d)."""
        mesh = np.meshgrid(*self.axes, indexing='ij')
        return np.column_stack([m.reshape(-1) for m in mesh])

    def integral(self) -> float:
        """Trapezoid integral of the mean over the lattice."""
        values = self.mean
        for axis in reversed(self.axes):
            values = trapezoid(values, axis, axis=-1)
        return float(values)

    def to_frame(self, coordinate_names: Optional[List[str]] = None) -> pd.DataFrame:
        names = coordinate_names or (['x'] if self.dim == 1 else [f'x{i + 1}' for i in range(self.dim)])
        frame = pd.DataFrame(self.points(), columns=names)
        frame['mean'] = self.mean.reshape(-1)
        frame['lower'] = self.lower.reshape(-1)
        frame['upper'] = self.upper.reshape(-1)
        return frame


@dataclass
class TruncationReport:
    """
    Jump-count study for one (sigma, theta, n) cell.

    Attributes:
        sigma (float): Discount
        theta (float): Strength
        n (int): Sample size
        cap (int): Cap on directly simulated sticks
        mn_draws (np.ndarray): Draws of M_n; capped draws hold the cap
        mn_capped (np.ndarray): Whether each M_n draw hit the cap
        log_ln_draws (Optional[np.ndarray]): Draws of log L_n (sigma > 0)
        thresholds (List[int]): Ascending thresholds K
        exceedance (List[float]): Reported P(M_n > K) per threshold
        source (List[str]): 'direct', 'proxy_ln' or 'poisson_mixture' per threshold
        mn_exceedance (List[float]): Direct M_n estimate, NaN above the cap
        ln_exceedance (List[float]): L_n estimate, NaN when sigma = 0
        quantiles (Dict[str, float]): Summary quantiles of M_n
    """
    sigma: float
    theta: float
    n: int
    cap: int
    mn_draws: np.ndarray
    mn_capped: np.ndarray
    log_ln_draws: Optional[np.ndarray]
    thresholds: List[int]
    exceedance: List[float]
    source: List[str]
    mn_exceedance: List[float]
    ln_exceedance: List[float]
    quantiles: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.exceedance, dtype=float)
        if np.any((values < 0) | (values > 1)):
            raise DiagnosticsError("Exceedance estimates must lie in [0, 1]")
        if list(self.thresholds) != sorted(self.thresholds):
            raise ParameterDomainError("Thresholds must be sorted ascending")

    def draws_frame(self) -> pd.DataFrame:
        reps = self.mn_draws.size
        log_ln = self.log_ln_draws if self.log_ln_draws is not None else np.full(reps, np.nan)
        return pd.DataFrame({
            'sigma': self.sigma,
            'theta': self.theta,
            'n': self.n,
            'replicate': np.arange(reps),
            'mn': self.mn_draws,
            'mn_capped': self.mn_capped.astype(int),
            'log_ln': log_ln,
        })

    def exceedance_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'sigma': self.sigma,
            'theta': self.theta,
            'n': self.n,
            'threshold': self.thresholds,
            'exceedance': self.exceedance,
            'source': self.source,
            'mn_exceedance': self.mn_exceedance,
            'ln_exceedance': self.ln_exceedance,
        })

    def get_summary(self) -> Dict[str, Any]:
        return {
            'sigma': self.sigma,
            'theta': self.theta,
            'n': self.n,
            'reps': int(self.mn_draws.size),
            'capped_draws': int(self.mn_capped.sum()),
            'quantiles': self.quantiles,
            'proxy_thresholds': [k for k, s in zip(self.thresholds, self.source) if s != 'direct'],
        }


@dataclass
class BenchmarkRecord:
    """
    Efficiency measures of one benchmark replicate.

    Attributes:
        algorithm (str): Sampler name
        sigma (float): Discount
        theta (float): Strength
        n (int): Sample size
        m (int): Auxiliary sample size (ICS only)
        replicate (int): Replicate index
        ess_kn (float): ESS of the cluster-count trace
        ess_deviance (float): ESS of the deviance trace
        seconds (float): Total sampling time
        cap_hit_frequency (float): Fraction of iterations hitting the stick cap
        mean_jumps (float): Mean active sticks per iteration
    """
    algorithm: str
    sigma: float
    theta: float
    n: int
    m: int
    replicate: int
    ess_kn: float
    ess_deviance: float
    seconds: float
    cap_hit_frequency: float = 0.0
    mean_jumps: float = 0.0

    @property
    def time_per_ess_kn(self) -> float:
        return self.seconds / self.ess_kn if self.ess_kn > 0 else float('nan')

    @property
    def time_per_ess_deviance(self) -> float:
        return self.seconds / self.ess_deviance if self.ess_deviance > 0 else float('nan')

    def to_dict(self) -> Dict[str, Any]:
        row = asdict(self)
        row['time_per_ess_kn'] = self.time_per_ess_kn
        row['time_per_ess_deviance'] = self.time_per_ess_deviance
        return row
