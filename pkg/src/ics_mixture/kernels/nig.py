"""
Normal-Inverse-Gamma Base Measure.

Conjugate base measure for the univariate Gaussian kernel:
var ~ InvGamma(a0, b0) and mu | var ~ Normal(m0, var / k0).

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-15 10:03:12
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np
from scipy import stats

from ..exceptions import ParameterDomainError
from ..randcore import RngStream
from .atoms import AtomArray
from .base_measure import BaseMeasure


@dataclass
class NIGBase(BaseMeasure):
    """
    Normal-inverse-gamma hyperparameters.

    Attributes:
        m0 (float): Prior mean location
        k0 (float): Mean-precision scale
        a0 (float): Inverse-gamma shape
        b0 (float): Inverse-gamma scale
    """
    m0: float = 0.0
    k0: float = 0.2
    a0: float = 2.0
    b0: float = 1.0

    def __post_init__(self):
        for name in ('k0', 'a0', 'b0'):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ParameterDomainError(f"NIG {name} must be positive, got {value}")
        if not np.isfinite(self.m0):
            raise ParameterDomainError(f"NIG m0 must be finite, got {self.m0}")

    @property
    def dim(self) -> int:
        return 1

    def posterior_params(self, data: np.ndarray) -> 'NIGBase':
        x = self.as_data(data)[:, 0]
        n = x.size
        if n == 0:
            return self
        mean = x.mean()
        kn = self.k0 + n
        return NIGBase(
            m0=(self.k0 * self.m0 + n * mean) / kn,
            k0=kn,
            a0=self.a0 + 0.5 * n,
            b0=self.b0 + 0.5 * np.sum((x - mean) ** 2) + self.k0 * n * (mean - self.m0) ** 2 / (2.0 * kn),
        )

    def _draw(self, gen: np.random.Generator, size: int) -> AtomArray:
        var = 1.0 / gen.gamma(self.a0, 1.0 / self.b0, size=size)
        mu = self.m0 + np.sqrt(var / self.k0) * gen.standard_normal(size)
        return AtomArray(mu[:, None], var[:, None, None])

    def predictive_params(self) -> Tuple[float, np.ndarray, np.ndarray]:
        scale2 = self.b0 * (1.0 + 1.0 / self.k0) / self.a0
        return 2.0 * self.a0, np.array([self.m0]), np.array([[scale2]])

    def log_marginal_likelihood(self, X: np.ndarray) -> np.ndarray:
        df, loc, shape = self.predictive_params()
        x = self.as_data(X)[:, 0]
        return stats.t.logpdf(x, df, loc=loc[0], scale=np.sqrt(shape[0, 0]))

    def refresh_atoms(self, rng: RngStream, data: np.ndarray, labels: np.ndarray, k: int) -> AtomArray:
        x = self.as_data(data)[:, 0]
        labels = np.asarray(labels, dtype=int)
        counts = np.bincount(labels, minlength=k)[:k].astype(float)
        sums = np.bincount(labels, weights=x, minlength=k)[:k]
        means = np.divide(sums, counts, out=np.zeros(k), where=counts > 0)
        squares = np.bincount(labels, weights=(x - means[labels]) ** 2, minlength=k)[:k]

        kn = self.k0 + counts
        mn = (self.k0 * self.m0 + sums) / kn
        an = self.a0 + 0.5 * counts
        bn = self.b0 + 0.5 * squares + self.k0 * counts * (means - self.m0) ** 2 / (2.0 * kn)

        gen = rng.generator
        var = bn / gen.gamma(an, 1.0, size=k)
        mu = mn + np.sqrt(var / kn) * gen.standard_normal(k)
        return AtomArray(mu[:, None], var[:, None, None])

    def to_dict(self) -> Dict[str, Any]:
        return {'family': 'nig', 'm0': float(self.m0), 'k0': float(self.k0),
                'a0': float(self.a0), 'b0': float(self.b0)}
