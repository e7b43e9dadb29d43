"""
Process Parameter Models.

This module defines the parameter records of the Pitman-Yor and
Griffiths-Milne processes, and the partition counts the urn works on.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-15 08:44:30
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from ..exceptions import ParameterDomainError


@dataclass(frozen=True)
class PYParams:
    """
    Pitman-Yor parameters.

    Attributes:
        sigma (float): Discount in [0, 1); sigma = 0 is the Dirichlet process
        theta (float): Strength, greater than -sigma
    """
    sigma: float = 0.0
    theta: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.sigma < 1.0:
            raise ParameterDomainError(f"sigma must lie in [0, 1), got {self.sigma}")
        if not np.isfinite(self.theta) or self.theta <= -self.sigma:
            raise ParameterDomainError(
                f"theta must exceed -sigma, got theta={self.theta}, sigma={self.sigma}"
            )

    @property
    def is_dirichlet(self) -> bool:
        return self.sigma == 0.0

    def fresh_strength(self, k: int) -> float:
        """Weight theta + k sigma of a fresh value given k distinct values."""
        return self.theta + k * self.sigma

    def to_dict(self) -> Dict[str, float]:
        return {'sigma': self.sigma, 'theta': self.theta}

    def __str__(self) -> str:
        return f"PY(sigma={self.sigma}, theta={self.theta})"


@dataclass(frozen=True)
class GMDDPParams:
    """
    Griffiths-Milne dependent Dirichlet process parameters.

    Attributes:
        theta (float): Total mass, positive
        z (float): Share of the mass given to the idiosyncratic processes
        L (int): Number of groups
    """
    theta: float = 1.0
    z: float = 0.5
    L: int = 2

    def __post_init__(self):
        if not np.isfinite(self.theta) or self.theta <= 0:
            raise ParameterDomainError(f"GM-DDP theta must be positive, got {self.theta}")
        if not 0.0 < self.z < 1.0:
            raise ParameterDomainError(f"GM-DDP z must lie in (0, 1), got {self.z}")
        if int(self.L) != self.L or self.L < 1:
            raise ParameterDomainError(f"GM-DDP needs at least one group, got L={self.L}")

    @property
    def idiosyncratic_mass(self) -> float:
        return self.theta * self.z

    @property
    def common_mass(self) -> float:
        return self.theta * (1.0 - self.z)

    def to_dict(self) -> Dict[str, float]:
        return {'theta': self.theta, 'z': self.z, 'L': int(self.L)}


@dataclass
class PartitionCounts:
    """
    Cluster frequencies of a partition of n items.

    Attributes:
        n_j (List[int]): Positive cluster sizes
    """
    n_j: List[int] = field(default_factory=list)

    def __post_init__(self):
        self.n_j = [int(c) for c in self.n_j]
        if any(c < 1 for c in self.n_j):
            raise ParameterDomainError(f"Cluster sizes must be positive, got {self.n_j}")

    @classmethod
    def from_labels(cls, labels) -> 'PartitionCounts':
        labels = np.asarray(labels, dtype=int)
        counts = np.bincount(labels) if labels.size else np.zeros(0, dtype=int)
        return cls([int(c) for c in counts if c > 0])

    @property
    def k(self) -> int:
        return len(self.n_j)

    @property
    def n(self) -> int:
        return int(sum(self.n_j))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.n_j, dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        return {'k': self.k, 'n': self.n, 'n_j': list(self.n_j)}
