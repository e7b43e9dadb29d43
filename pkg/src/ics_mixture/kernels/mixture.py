"""
Mixture Realization Module.

A realization of the random mixture density: finitely many weighted
Gaussian components plus, for samplers that keep part of the mass
unallocated, a weighted prior-predictive term. Besides the joint density it
provides the per-coordinate marginals and the conditional threshold
probability P(X_a < c | X_b = x) used by the bivariate summaries.

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-16 14:20:09
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats
from scipy.special import logsumexp

from ..exceptions import ParameterDomainError
from .atoms import AtomArray
from .base_measure import BaseMeasure


@dataclass
class MixtureRealization:
    """
    Weighted Gaussian mixture with an optional prior-predictive remainder.

    Attributes:
        weights (np.ndarray): Component weights, shape (k,)
        atoms (AtomArray): Components
        residual_weight (float): Mass assigned to the prior predictive
        residual (Optional[BaseMeasure]): Base measure for the remainder
    """
    weights: np.ndarray
    atoms: AtomArray
    residual_weight: float = 0.0
    residual: Optional[BaseMeasure] = None

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape != (len(self.atoms),):
            raise ParameterDomainError("One weight per atom is required")
        if self.residual_weight > 0 and self.residual is None:
            raise ParameterDomainError("A residual weight needs a residual base measure")

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum() + self.residual_weight)

    def density(self, points: np.ndarray) -> np.ndarray:
        """Mixture density at each row of points, shape (G, d)."""
        points = np.asarray(points, dtype=float)
        values = np.zeros(points.shape[0])
        if len(self.atoms):
            positive = self.weights > 0
            log_k = self.atoms.take(np.flatnonzero(positive)).log_kernel(points)
            values = np.exp(logsumexp(log_k + np.log(self.weights[positive])[None, :], axis=1))
        if self.residual_weight > 0:
            values = values + self.residual_weight * np.exp(self.residual.log_marginal_likelihood(points))
        return values

    def marginal_density(self, axis: int, values: np.ndarray) -> np.ndarray:
        """Density of coordinate `axis` at the given values."""
        values = np.asarray(values, dtype=float)
        sd = np.sqrt(self.atoms.cov[:, axis, axis])
        out = (stats.norm.pdf(values[:, None], loc=self.atoms.loc[None, :, axis], scale=sd[None, :])
               @ self.weights) if len(self.atoms) else np.zeros(values.size)
        if self.residual_weight > 0:
            df, loc, shape = self.residual.predictive_params()
            out = out + self.residual_weight * stats.t.pdf(values, df, loc=loc[axis],
                                                           scale=np.sqrt(shape[axis, axis]))
        return out

    def conditional_probability(self, threshold: float, axis: int, given_axis: int,
                                values: np.ndarray) -> np.ndarray:
        """
        P(X_axis < threshold | X_given_axis = x) for each x in values.

        Args:
            threshold (float): Cut-off on coordinate `axis`
            axis (int): Coordinate the event refers to
            given_axis (int): Conditioning coordinate
            values (np.ndarray): Conditioning values

        Returns:
            np.ndarray: Conditional probabilities in [0, 1]
        """
        if axis == given_axis:
            raise ParameterDomainError("axis and given_axis must differ")
        values = np.asarray(values, dtype=float)
        numerator = np.zeros(values.size)
        denominator = np.zeros(values.size)

        if len(self.atoms):
            loc, cov = self.atoms.loc, self.atoms.cov
            s_bb = cov[:, given_axis, given_axis]
            s_ab = cov[:, axis, given_axis]
            s_aa = cov[:, axis, axis]
            density_b = stats.norm.pdf(values[:, None], loc=loc[None, :, given_axis],
                                       scale=np.sqrt(s_bb)[None, :]) * self.weights[None, :]
            cond_mean = loc[None, :, axis] + (s_ab / s_bb)[None, :] * (values[:, None] - loc[None, :, given_axis])
            cond_sd = np.sqrt(np.maximum(s_aa - s_ab ** 2 / s_bb, 1e-300))
            cdf = stats.norm.cdf(threshold, loc=cond_mean, scale=cond_sd[None, :])
            numerator += (density_b * cdf).sum(axis=1)
            denominator += density_b.sum(axis=1)

        if self.residual_weight > 0:
            df, loc, shape = self.residual.predictive_params()
            s_bb, s_ab, s_aa = shape[given_axis, given_axis], shape[axis, given_axis], shape[axis, axis]
            offset = values - loc[given_axis]
            density_b = self.residual_weight * stats.t.pdf(values, df, loc=loc[given_axis], scale=np.sqrt(s_bb))
            delta = offset ** 2 / s_bb
            cond_scale = np.sqrt((df + delta) / (df + 1.0) * (s_aa - s_ab ** 2 / s_bb))
            cdf = stats.t.cdf(threshold, df + 1.0, loc=loc[axis] + s_ab / s_bb * offset, scale=cond_scale)
            numerator += density_b * cdf
            denominator += density_b

        return np.divide(numerator, denominator, out=np.zeros(values.size), where=denominator > 0)
