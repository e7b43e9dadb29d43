"""
Kernels Package.

Gaussian mixture kernels and their conjugate base measures:
- Atom / AtomArray: component parameters
- NIGBase: normal-inverse-gamma base for univariate data
- NIWBase: normal-inverse-Wishart base for multivariate data
- MixtureRealization: weighted mixtures evaluated on grids

The module-level functions are thin single-observation wrappers used where
readability matters more than vectorization.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-16 14:22:40
"""

import numpy as np

from ..randcore import RngStream
from .atoms import Atom, AtomArray
from .base_measure import BaseMeasure
from .mixture import MixtureRealization
from .nig import NIGBase
from .niw import NIWBase

__all__ = [
    'Atom',
    'AtomArray',
    'BaseMeasure',
    'MixtureRealization',
    'NIGBase',
    'NIWBase',
    'kernel_density',
    'prior_draw',
    'posterior_draw',
    'marginal_likelihood',
    'default_base'
]

__version__ = '1.0.0'
__author__ = 'Barrhann'


def kernel_density(x, atom: Atom) -> float:
    """Gaussian kernel density of one observation under one atom."""
    X = np.atleast_1d(np.asarray(x, dtype=float)).reshape(1, -1)
    return float(np.exp(AtomArray.from_atoms([atom]).log_kernel(X)[0, 0]))


def prior_draw(rng: RngStream, base: BaseMeasure) -> Atom:
    """Draw one atom from the base measure."""
    return base.prior_draw(rng, 1)[0]


def posterior_draw(rng: RngStream, base: BaseMeasure, data) -> Atom:
    """Draw one atom from the conjugate posterior given data."""
    return base.posterior_draw(rng, data)


def marginal_likelihood(base: BaseMeasure, x) -> float:
    """Prior predictive density of one observation."""
    return base.marginal_likelihood(x)


def default_base(dim: int) -> BaseMeasure:
    """
    Default base measure for a data dimension.

    Args:
        dim (int): Observation dimension

    Returns:
        BaseMeasure: NIG(0, 0.2, 2, 1) for dim 1, NIW(0, 2, 5, I) otherwise
    """
    if dim == 1:
        return NIGBase()
    return NIWBase(m0=np.zeros(dim), k0=2.0, nu0=max(5.0, dim + 3.0), S0=np.eye(dim))
