"""
Normal-Inverse-Wishart Base Measure.

Conjugate base measure for the multivariate Gaussian kernel:
cov ~ InvWishart(nu0, S0) and mu | cov ~ Normal(m0, cov / k0).
S0 is the scale matrix of the inverse-Wishart, so E[cov] = S0 / (nu0 - d - 1).

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-15 10:41:55
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy import stats

from ..exceptions import ParameterDomainError
from .atoms import AtomArray
from .base_measure import BaseMeasure


@dataclass(eq=False)
class NIWBase(BaseMeasure):
    """
    Normal-inverse-Wishart hyperparameters.

    Attributes:
        m0 (np.ndarray): Prior mean location, dimension d
        k0 (float): Mean-precision scale
        nu0 (float): Degrees of freedom, greater than d - 1
        S0 (np.ndarray): Positive-definite scale matrix
    """
    m0: np.ndarray = field(default_factory=lambda: np.zeros(2))
    k0: float = 2.0
    nu0: float = 5.0
    S0: Optional[np.ndarray] = None

    def __post_init__(self):
        self.m0 = np.atleast_1d(np.asarray(self.m0, dtype=float))
        d = self.m0.shape[0]
        self.S0 = np.eye(d) if self.S0 is None else np.atleast_2d(np.asarray(self.S0, dtype=float))
        if self.S0.shape != (d, d):
            raise ParameterDomainError(f"NIW S0 must be {d}x{d}, got {self.S0.shape}")
        if self.k0 <= 0:
            raise ParameterDomainError(f"NIW k0 must be positive, got {self.k0}")
        if self.nu0 <= d - 1:
            raise ParameterDomainError(f"NIW nu0 must exceed d - 1 = {d - 1}, got {self.nu0}")
        if not np.allclose(self.S0, self.S0.T) or np.any(np.linalg.eigvalsh(self.S0) <= 0):
            raise ParameterDomainError("NIW S0 must be symmetric positive definite")

    @property
    def dim(self) -> int:
        return self.m0.shape[0]

    def posterior_params(self, data: np.ndarray) -> 'NIWBase':
        X = self.as_data(data)
        n = X.shape[0]
        if n == 0:
            return self
        mean = X.mean(axis=0)
        centered = X - mean
        kn = self.k0 + n
        offset = (mean - self.m0)[:, None]
        Sn = self.S0 + centered.T @ centered + (self.k0 * n / kn) * (offset @ offset.T)
        return NIWBase(
            m0=(self.k0 * self.m0 + n * mean) / kn,
            k0=kn,
            nu0=self.nu0 + n,
            S0=0.5 * (Sn + Sn.T),
        )

    def _draw(self, gen: np.random.Generator, size: int) -> AtomArray:
        d = self.dim
        cov = stats.invwishart.rvs(df=self.nu0, scale=self.S0, size=size, random_state=gen)
        cov = np.asarray(cov, dtype=float).reshape(size, d, d)
        cov = 0.5 * (cov + np.swapaxes(cov, 1, 2))
        chol = np.linalg.cholesky(cov / self.k0)
        z = gen.standard_normal((size, d))
        loc = self.m0[None, :] + np.einsum('kde,ke->kd', chol, z)
        return AtomArray(loc, cov)

    def predictive_params(self) -> Tuple[float, np.ndarray, np.ndarray]:
        df = self.nu0 - self.dim + 1.0
        shape = self.S0 * (self.k0 + 1.0) / (self.k0 * df)
        return df, self.m0.copy(), shape

    def log_marginal_likelihood(self, X: np.ndarray) -> np.ndarray:
        df, loc, shape = self.predictive_params()
        X = self.as_data(X)
        return np.atleast_1d(stats.multivariate_t.logpdf(X, loc=loc, shape=shape, df=df))

    def to_dict(self) -> Dict[str, Any]:
        return {'family': 'niw', 'm0': self.m0.tolist(), 'k0': float(self.k0),
                'nu0': float(self.nu0), 'S0': self.S0.tolist()}
