"""
Dataset Model.

Observations with optional group labels, plus the per-coordinate
standardization applied before fitting and undone on every density output.

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-15 15:37:19
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..exceptions import DataFormatError


@dataclass
class Standardizer:
    """
    Affine map z = (x - center) / scale per coordinate.

    Attributes:
        center (np.ndarray): Coordinate means
        scale (np.ndarray): Coordinate standard deviations
    """
    center: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> 'Standardizer':
        X = np.asarray(X, dtype=float)
        scale = X.std(axis=0, ddof=1) if X.shape[0] > 1 else np.ones(X.shape[1])
        return cls(X.mean(axis=0), np.where(scale > 0, scale, 1.0))

    @classmethod
    def identity(cls, dim: int) -> 'Standardizer':
        return cls(np.zeros(dim), np.ones(dim))

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.center) / self.scale

    def transform_axis(self, values: np.ndarray, axis: int) -> np.ndarray:
        return (np.asarray(values, dtype=float) - self.center[axis]) / self.scale[axis]

    @property
    def jacobian(self) -> float:
        """Factor turning a standardized density into an original-scale one."""
        return float(1.0 / np.prod(self.scale))

    def to_dict(self) -> Dict[str, List[float]]:
        return {'center': np.asarray(self.center).tolist(), 'scale': np.asarray(self.scale).tolist()}


@dataclass
class Dataset:
    """
    Observations ready for fitting.

    Attributes:
        X (np.ndarray): Observations in the original scale, shape (n, d)
        groups (Optional[np.ndarray]): Zero-based group index per observation
        group_names (List[int]): Original group label of each group index
        columns (List[str]): Value column names
        source (str): Where the data came from
    """
    X: np.ndarray
    groups: Optional[np.ndarray] = None
    group_names: List[int] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    source: str = 'memory'

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or X.shape[0] == 0:
            raise DataFormatError("Dataset needs at least one observation")
        if not np.all(np.isfinite(X)):
            raise DataFormatError("Dataset contains non-finite values")
        self.X = X
        if self.groups is not None:
            raw = np.asarray(self.groups)
            if raw.shape[0] != X.shape[0]:
                raise DataFormatError("One group label per observation is required")
            names, index = np.unique(raw, return_inverse=True)
            self.groups = index.astype(np.int64)
            if not self.group_names:
                self.group_names = [int(g) for g in names]
        if not self.columns:
            self.columns = [f'x{i + 1}' for i in range(X.shape[1])] if X.shape[1] > 1 else ['x']

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def dim(self) -> int:
        return int(self.X.shape[1])

    @property
    def n_groups(self) -> int:
        return len(self.group_names) if self.groups is not None else 0

    def get_summary(self) -> Dict[str, Any]:
        return {
            'source': self.source,
            'rows': self.n,
            'dimension': self.dim,
            'groups': self.group_names,
            'columns': self.columns,
        }

    def __str__(self) -> str:
        return f"Dataset({self.n} rows, d={self.dim}, groups={self.n_groups})"
