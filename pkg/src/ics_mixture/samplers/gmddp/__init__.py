"""
GM-DDP Sampler Package.

Importance conditional sampling for grouped data under a Griffiths-Milne
dependent Dirichlet process mixture:
- gmddp_prior_weights / w_logdensity_fullcond / WeightUpdater: the weights w
- gmddp_ics_step / GMDDPSampler: the sampler itself
- gmddp_prior_predictive_counts: distinct values per group under the prior

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 10:44:02
"""

from .sampler import GMDDPSampler, gmddp_ics_step, gmddp_prior_predictive_counts, group_realization
from .weights import WeightUpdater, gmddp_prior_weights, log_prior_density, w_logdensity_fullcond

__all__ = [
    'GMDDPSampler',
    'WeightUpdater',
    'gmddp_ics_step',
    'gmddp_prior_weights',
    'gmddp_prior_predictive_counts',
    'group_realization',
    'log_prior_density',
    'w_logdensity_fullcond'
]

__version__ = '1.0.0'
__author__ = 'Barrhann'
