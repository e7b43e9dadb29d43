"""
Configuration Models.

This module defines the configuration records:
- GridSpec: evaluation grid, one (min, max, points) triple per axis
- ChainConfig: everything one Markov chain needs
- RunConfig: the flat, fully resolved command-line configuration

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-17 09:02:31
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..exceptions import ConfigurationError
from ..kernels import BaseMeasure
from .params import GMDDPParams, PYParams

ALGORITHMS = ('ics', 'marginal', 'slice-dep', 'slice-indep', 'gmddp-ics')
COMMANDS = ('fit', 'benchmark', 'truncation')
DEVIANCE_MODES = ('log', 'literal')


@dataclass
class GridSpec:
    """
    Rectangular evaluation grid.

    Attributes:
        lower (List[float]): Lower end per axis
        upper (List[float]): Upper end per axis
        points (List[int]): Number of points per axis
    """
    lower: List[float]
    upper: List[float]
    points: List[int]

    def __post_init__(self):
        self.lower = [float(v) for v in np.atleast_1d(self.lower)]
        self.upper = [float(v) for v in np.atleast_1d(self.upper)]
        self.points = [int(v) for v in np.atleast_1d(self.points)]
        if not len(self.lower) == len(self.upper) == len(self.points):
            raise ConfigurationError("Grid bounds and point counts need one entry per axis")
        for lo, hi, count in zip(self.lower, self.upper, self.points):
            if not lo < hi:
                raise ConfigurationError(f"Grid lower end {lo} must be below upper end {hi}")
            if count < 2:
                raise ConfigurationError(f"Grid needs at least 2 points per axis, got {count}")

    @classmethod
    def from_data(cls, X: np.ndarray, points: Optional[int] = None, width: float = 3.0) -> 'GridSpec':
        """
        Grid spanning the data range widened by `width` standard deviations.

        Args:
            X (np.ndarray): Observations, shape (n, d)
            points (Optional[int]): Points per axis; 512 for d = 1, 64 otherwise
            width (float): Widening in standard deviations

        Returns:
            GridSpec: The grid
        """
        X = np.asarray(X, dtype=float).reshape(len(X), -1)
        sd = X.std(axis=0, ddof=1) if X.shape[0] > 1 else np.ones(X.shape[1])
        sd = np.where(sd > 0, sd, 1.0)
        count = points or (512 if X.shape[1] == 1 else 64)
        return cls((X.min(axis=0) - width * sd).tolist(),
                   (X.max(axis=0) + width * sd).tolist(),
                   [count] * X.shape[1])

    @property
    def dim(self) -> int:
        return len(self.points)

    def axes(self) -> List[np.ndarray]:
        return [np.linspace(lo, hi, count) for lo, hi, count in zip(self.lower, self.upper, self.points)]

    def lattice(self) -> np.ndarray:
        """All grid points in lattice order, shape (G, d)."""
        mesh = np.meshgrid(*self.axes(), indexing='ij')
        return np.column_stack([m.reshape(-1) for m in mesh])

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ChainConfig:
    """
    Configuration of one Markov chain.

    Attributes:
        algorithm (str): One of ALGORITHMS
        params: PYParams, or GMDDPParams for 'gmddp-ics'
        base (BaseMeasure): Conjugate base measure
        m (int): Auxiliary sample size for the ICS samplers
        iterations (int): Total iterations
        burnin (int): Discarded leading iterations
        seed (int): Root seed
        grid (Optional[GridSpec]): Grid in the sampler's (standardized) scale
        jump_cap (int): Maximum number of sticks for the slice samplers
        threads (int): Worker threads for blockwise allocation
        deviance_mode (str): 'log' or 'literal'
        threshold (Optional[float]): Cut-off of the conditional probability curve
        threshold_axis (int): Coordinate the threshold refers to
    """
    algorithm: str
    params: Union[PYParams, GMDDPParams]
    base: BaseMeasure
    m: int = 10
    iterations: int = 1500
    burnin: int = 500
    seed: int = 0
    grid: Optional[GridSpec] = None
    jump_cap: int = 100_000
    threads: int = 1
    deviance_mode: str = 'log'
    threshold: Optional[float] = None
    threshold_axis: int = 0

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(
                f"Unknown algorithm '{self.algorithm}'. Available: {', '.join(ALGORITHMS)}"
            )
        if (self.algorithm == 'gmddp-ics') != isinstance(self.params, GMDDPParams):
            raise ConfigurationError("gmddp-ics needs GMDDPParams; other samplers need PYParams")
        if self.m < 1:
            raise ConfigurationError(f"m must be at least 1, got {self.m}")
        if self.burnin < 0 or self.iterations <= self.burnin:
            raise ConfigurationError(
                f"iterations ({self.iterations}) must exceed burnin ({self.burnin}) >= 0"
            )
        if self.jump_cap < 1:
            raise ConfigurationError(f"jump_cap must be positive, got {self.jump_cap}")
        if self.threads < 1:
            raise ConfigurationError(f"threads must be positive, got {self.threads}")
        if self.deviance_mode not in DEVIANCE_MODES:
            raise ConfigurationError(f"deviance mode must be one of {DEVIANCE_MODES}")
        if self.grid is not None and self.grid.dim != self.base.dim:
            raise ConfigurationError("Grid dimension does not match the base measure")
        if self.threshold is not None and self.base.dim != 2:
            raise ConfigurationError("Conditional threshold curves need bivariate data")
        if self.threshold_axis not in range(self.base.dim):
            raise ConfigurationError(f"threshold_axis must index a coordinate, got {self.threshold_axis}")

    @property
    def retained(self) -> int:
        return self.iterations - self.burnin


@dataclass
class RunConfig:
    """
    Flat command-line configuration after merging flags, file and defaults.

    List-valued fields are grids used by the benchmark and truncation
    commands; `fit` reads the scalar fields only.
    """
    command: str = 'fit'
    algorithm: str = 'ics'
    sigma: float = 0.0
    theta: float = 1.0
    z: float = 0.5
    m: int = 10
    iterations: int = 1500
    burnin: int = 500
    seed: int = 0
    grid_min: Optional[List[float]] = None
    grid_max: Optional[List[float]] = None
    grid_points: Optional[int] = None
    jump_cap: int = 100_000
    band_level: float = 0.9
    input: Optional[str] = None
    output: str = 'results'
    deviance_mode: str = 'log'
    standardize: bool = True
    threads: int = 1
    synthetic: Optional[str] = None
    n: int = 200
    m0: Optional[float] = None
    k0: Optional[float] = None
    a0: float = 2.0
    b0: float = 1.0
    nu0: Optional[float] = None
    s0: float = 1.0
    threshold: Optional[float] = None
    threshold_axis: int = 0
    algorithms: List[str] = field(default_factory=lambda: ['ics', 'marginal', 'slice-dep', 'slice-indep'])
    sigmas: List[float] = field(default_factory=lambda: [0.0])
    thetas: List[float] = field(default_factory=lambda: [1.0])
    ns: List[int] = field(default_factory=lambda: [100])
    ms: List[int] = field(default_factory=list)
    replicates: int = 1
    workers: int = 1
    thresholds: List[int] = field(default_factory=lambda: [10 ** 3, 10 ** 6, 10 ** 9])
    reps: int = 100
    cap: int = 10 ** 7

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigurationError(f"Unknown command '{self.command}'")
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(
                f"Unknown algorithm '{self.algorithm}'. Available: {', '.join(ALGORITHMS)}"
            )
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigurationError(f"Unknown benchmark algorithm(s): {', '.join(unknown)}")
        if self.burnin < 0 or self.iterations <= self.burnin:
            raise ConfigurationError(
                f"iterations ({self.iterations}) must exceed burnin ({self.burnin}) >= 0"
            )
        if not 0.0 < self.band_level < 1.0:
            raise ConfigurationError(f"band_level must lie in (0, 1), got {self.band_level}")
        if self.deviance_mode not in DEVIANCE_MODES:
            raise ConfigurationError(f"deviance mode must be one of {DEVIANCE_MODES}")
        if self.replicates < 1 or self.reps < 1:
            raise ConfigurationError("replicates and reps must be positive")
        if self.n < 1:
            raise ConfigurationError(f"n must be positive, got {self.n}")
        if self.synthetic not in (None, 'two-gaussian'):
            raise ConfigurationError(f"Unknown synthetic generator '{self.synthetic}'")
        self.thresholds = sorted(int(k) for k in self.thresholds)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
