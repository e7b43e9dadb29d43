"""
Samplers Package.

This package contains the MCMC samplers for Pitman-Yor mixtures:
- ics: importance conditional sampler
- marginal: urn-based collapsed sampler
- slice-dep / slice-indep: dependent and independent slice-efficient samplers
- gmddp-ics: importance conditional sampler for grouped data

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-17 10:47:19
"""

from typing import Dict, Type

from ..exceptions import ConfigurationError
from .base_sampler import BLOCK_SIZE, BaseSampler, allocate_in_blocks, categorical_block
from .ics import ICSSampler, ics_step
from .marginal import MarginalSampler, marginal_step, urn_density
from .slice_efficient import SliceEfficientSampler, slice_step, stick_density
from .gmddp import GMDDPSampler, gmddp_ics_step

__all__ = [
    # Base classes
    'BaseSampler',
    'BLOCK_SIZE',
    'allocate_in_blocks',
    'categorical_block',

    # Samplers
    'ICSSampler',
    'MarginalSampler',
    'SliceEfficientSampler',
    'GMDDPSampler',

    # Single steps
    'ics_step',
    'marginal_step',
    'slice_step',
    'gmddp_ics_step',
    'urn_density',
    'stick_density'
]

# Version information
__version__ = '1.0.0'
__author__ = 'Barrhann'

# Registry name -> (class, fixed keyword arguments)
_REGISTRY: Dict[str, tuple] = {
    'ics': (ICSSampler, {}),
    'marginal': (MarginalSampler, {}),
    'slice-dep': (SliceEfficientSampler, {'variant': 'dependent'}),
    'slice-indep': (SliceEfficientSampler, {'variant': 'independent'}),
    'gmddp-ics': (GMDDPSampler, {}),
}

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture.samplers',
    'description': 'MCMC samplers for Pitman-Yor and GM-DDP mixtures',
    'samplers': list(_REGISTRY),
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 10:47:19'
}


def get_all_samplers() -> Dict[str, Type[BaseSampler]]:
    """
    Get all available sampler classes by registry name.

    Returns:
        Dict[str, Type[BaseSampler]]: Registry name to sampler class
    """
    return {name: cls for name, (cls, _) in _REGISTRY.items()}


def create_sampler(name: str, **kwargs) -> BaseSampler:
    """
    Create an instance of a specific sampler by name.

    Args:
        name (str): Registry name of the sampler
        **kwargs: Constructor arguments (data, base, params, m, jump_cap, ...)

    Returns:
        BaseSampler: Instance of the requested sampler

    Raises:
        ConfigurationError: If name is not recognized
    """
    if name not in _REGISTRY:
        raise ConfigurationError(
            f"Unknown algorithm: {name}. "
            f"Available algorithms: {', '.join(_REGISTRY)}"
        )
    cls, fixed = _REGISTRY[name]
    return cls(**{**kwargs, **fixed})
