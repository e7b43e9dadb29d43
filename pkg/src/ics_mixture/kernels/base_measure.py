"""
Base Measure Module.

This module provides the abstract base class for conjugate base measures.
A base measure knows how to draw atoms from its prior, update itself with
data, draw from the resulting posterior, and evaluate its prior predictive
(marginal likelihood) density.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-16 11:52:18
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Tuple

import numpy as np

from ..exceptions import ParameterDomainError
from ..randcore import RngStream
from .atoms import Atom, AtomArray


class BaseMeasure(ABC):
    """
    Abstract base class for conjugate Gaussian base measures.

    Subclasses implement the hyperparameter update, the draw from the
    hyperparameters, and the Student-t form of the prior predictive.
    """

    @property
    @abstractmethod
    def dim(self) -> int:
        """Observation dimension."""
        raise NotImplementedError("Base measures must implement dim")

    @abstractmethod
    def posterior_params(self, data: np.ndarray) -> 'BaseMeasure':
        """
        Return the conjugate update of this base measure.

        Args:
            data (np.ndarray): Observations, shape (n, d); n may be 0

        Returns:
            BaseMeasure: Updated base measure of the same family
        """
        raise NotImplementedError("Base measures must implement posterior_params")

    @abstractmethod
    def _draw(self, gen: np.random.Generator, size: int) -> AtomArray:
        raise NotImplementedError("Base measures must implement _draw")

    @abstractmethod
    def predictive_params(self) -> Tuple[float, np.ndarray, np.ndarray]:
        """
        Parameters of the (multivariate) Student-t prior predictive.

        Returns:
            Tuple[float, np.ndarray, np.ndarray]: Degrees of freedom,
                location vector and shape matrix
        """
        raise NotImplementedError("Base measures must implement predictive_params")

    @abstractmethod
    def log_marginal_likelihood(self, X: np.ndarray) -> np.ndarray:
        """Log prior predictive density at each row of X."""
        raise NotImplementedError("Base measures must implement log_marginal_likelihood")

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError("Base measures must implement to_dict")

    def as_data(self, data) -> np.ndarray:
        """Coerce observations to an (n, d) float array and check the dimension."""
        X = np.asarray(data, dtype=float)
        if X.size == 0:
            return np.empty((0, self.dim))
        if X.ndim == 0:
            X = X.reshape(1, 1)
        elif X.ndim == 1:
            X = X[:, None] if self.dim == 1 else X[None, :]
        if X.shape[1] != self.dim:
            raise ParameterDomainError(
                f"Data dimension {X.shape[1]} does not match base dimension {self.dim}"
            )
        return X

    def prior_draw(self, rng: RngStream, size: int = 1) -> AtomArray:
        """Draw `size` independent atoms from the base measure."""
        return self._draw(rng.generator, int(size))

    def posterior_draw(self, rng: RngStream, data) -> Atom:
        """
        Draw one atom from the conjugate posterior given data.

        With no data this consumes the stream exactly like `prior_draw`.
        """
        return self.posterior_params(self.as_data(data))._draw(rng.generator, 1)[0]

    def marginal_likelihood(self, x) -> float:
        """Prior predictive density at a single observation."""
        return float(np.exp(self.log_marginal_likelihood(self.as_data(x))[0]))

    def refresh_atoms(self, rng: RngStream, data: np.ndarray, labels: np.ndarray, k: int) -> AtomArray:
        """
        Redraw the atoms of clusters 0..k-1 from their full conditionals.

        Clusters without data receive prior draws.

        Args:
            rng (RngStream): Source of randomness
            data (np.ndarray): Observations, shape (n, d)
            labels (np.ndarray): Cluster index per observation
            k (int): Number of clusters to refresh

        Returns:
            AtomArray: Fresh atoms, one per cluster
        """
        loc = np.empty((k, self.dim))
        cov = np.empty((k, self.dim, self.dim))
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts[:k] == 0)
        if empty.size:
            drawn = self._draw(rng.generator, empty.size)
            loc[empty] = drawn.loc
            cov[empty] = drawn.cov
        order = np.argsort(labels, kind='stable')
        bounds = np.concatenate([[0], np.cumsum(counts[:k])])
        for j in np.flatnonzero(counts[:k] > 0):
            members = data[order[bounds[j]:bounds[j + 1]]]
            atom = self.posterior_params(members)._draw(rng.generator, 1)
            loc[j] = atom.loc[0]
            cov[j] = atom.cov[0]
        return AtomArray(loc, cov)

    def __str__(self) -> str:
        params = ', '.join(f"{k}={v}" for k, v in self.to_dict().items() if k != 'family')
        return f"{self.__class__.__name__}({params})"
