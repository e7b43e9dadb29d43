"""
Atom Model.

Gaussian mixture-component parameters. A single component is an `Atom`;
samplers keep their components in an `AtomArray`, which stacks means and
covariances so kernel matrices are evaluated without Python loops.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-15 09:27:40
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from ..exceptions import ParameterDomainError

LOG_2PI = np.log(2.0 * np.pi)


@dataclass
class Atom:
    """
    Parameters of one Gaussian kernel.

    Attributes:
        mu (np.ndarray): Mean vector of dimension d
        cov (np.ndarray): Symmetric positive-definite d x d covariance
    """
    mu: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        self.mu = np.atleast_1d(np.asarray(self.mu, dtype=float))
        self.cov = np.atleast_2d(np.asarray(self.cov, dtype=float))
        d = self.mu.shape[0]
        if self.mu.ndim != 1 or self.cov.shape != (d, d):
            raise ParameterDomainError(
                f"Atom dimensions disagree: mu {self.mu.shape}, cov {self.cov.shape}"
            )
        if not np.allclose(self.cov, self.cov.T):
            raise ParameterDomainError("Atom covariance must be symmetric")
        if np.any(np.linalg.eigvalsh(self.cov) <= 0):
            raise ParameterDomainError("Atom covariance must be positive definite")

    @classmethod
    def univariate(cls, mu: float, var: float) -> 'Atom':
        """Build a univariate atom from a mean and a variance."""
        if var <= 0:
            raise ParameterDomainError(f"Atom variance must be positive, got {var}")
        return cls(np.array([mu]), np.array([[var]]))

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    @property
    def var(self) -> float:
        """Variance of a univariate atom."""
        if self.dim != 1:
            raise ParameterDomainError("var is only defined for univariate atoms")
        return float(self.cov[0, 0])

    def to_dict(self) -> dict:
        return {'mu': self.mu.tolist(), 'cov': self.cov.tolist()}


class AtomArray:
    """
    A stack of k Gaussian atoms sharing a dimension d.

    Attributes:
        loc (np.ndarray): Means, shape (k, d)
        cov (np.ndarray): Covariances, shape (k, d, d)
    """

    def __init__(self, loc: np.ndarray, cov: np.ndarray):
        loc = np.asarray(loc, dtype=float)
        cov = np.asarray(cov, dtype=float)
        if loc.ndim != 2 or cov.ndim != 3 or cov.shape != (loc.shape[0], loc.shape[1], loc.shape[1]):
            raise ParameterDomainError(
                f"AtomArray shapes disagree: loc {loc.shape}, cov {cov.shape}"
            )
        self.loc = loc
        self.cov = cov
        self._precision = None
        self._log_det = None

    @classmethod
    def empty(cls, dim: int) -> 'AtomArray':
        return cls(np.empty((0, dim)), np.empty((0, dim, dim)))

    @classmethod
    def from_atoms(cls, atoms: Sequence[Atom]) -> 'AtomArray':
        if not atoms:
            raise ParameterDomainError("from_atoms needs at least one atom; use AtomArray.empty")
        return cls(np.stack([a.mu for a in atoms]), np.stack([a.cov for a in atoms]))

    @classmethod
    def concatenate(cls, arrays: Iterable['AtomArray']) -> 'AtomArray':
        arrays = list(arrays)
        return cls(np.concatenate([a.loc for a in arrays], axis=0),
                   np.concatenate([a.cov for a in arrays], axis=0))

    @property
    def dim(self) -> int:
        return self.loc.shape[1]

    def __len__(self) -> int:
        return self.loc.shape[0]

    def __getitem__(self, index: int) -> Atom:
        return Atom(self.loc[index].copy(), self.cov[index].copy())

    def atoms(self) -> List[Atom]:
        return [self[j] for j in range(len(self))]

    def take(self, indices) -> 'AtomArray':
        """Return the atoms at the given indices, in that order."""
        indices = np.asarray(indices, dtype=int)
        return AtomArray(self.loc[indices], self.cov[indices])

    def delete(self, index: int) -> 'AtomArray':
        return AtomArray(np.delete(self.loc, index, axis=0), np.delete(self.cov, index, axis=0))

    def append(self, atom: Atom) -> 'AtomArray':
        return AtomArray(np.concatenate([self.loc, atom.mu[None, :]]),
                         np.concatenate([self.cov, atom.cov[None, :, :]]))

    def replace(self, index: int, atom: Atom) -> 'AtomArray':
        loc = self.loc.copy()
        cov = self.cov.copy()
        loc[index] = atom.mu
        cov[index] = atom.cov
        return AtomArray(loc, cov)

    def head(self, size: int) -> 'AtomArray':
        """First `size` atoms, sharing any cached precisions."""
        head = AtomArray(self.loc[:size], self.cov[:size])
        if self._precision is not None:
            head._log_det = self._log_det[:size]
            head._precision = self._precision[:size]
        return head

    def prepare(self) -> 'AtomArray':
        """Cache precisions and log-determinants; call before sharing across threads."""
        if self._precision is None:
            if self.dim == 1:
                self._log_det = np.log(self.cov[:, 0, 0])
                self._precision = 1.0 / self.cov
            else:
                self._log_det = np.linalg.slogdet(self.cov)[1]
                self._precision = np.linalg.inv(self.cov)
        return self

    def log_kernel(self, X: np.ndarray) -> np.ndarray:
        """
        Evaluate log Gaussian densities of every observation under every atom.

        Args:
            X (np.ndarray): Observations, shape (n, d)

        Returns:
            np.ndarray: Log densities, shape (n, k)

        Raises:
            ParameterDomainError: If the observation dimension differs from d
        """
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None] if self.dim == 1 else X[None, :]
        if X.shape[1] != self.dim:
            raise ParameterDomainError(
                f"Observation dimension {X.shape[1]} does not match atom dimension {self.dim}"
            )
        if len(self) == 0:
            return np.empty((X.shape[0], 0))
        self.prepare()
        if self.dim == 1:
            diff = X[:, 0][:, None] - self.loc[None, :, 0]
            maha = diff * diff * self._precision[None, :, 0, 0]
        else:
            diff = X[:, None, :] - self.loc[None, :, :]
            maha = np.einsum('nkd,kde,nke->nk', diff, self._precision, diff)
        return -0.5 * (self.dim * LOG_2PI + self._log_det[None, :] + maha)

    def __repr__(self) -> str:
        return f"AtomArray(k={len(self)}, dim={self.dim})"
