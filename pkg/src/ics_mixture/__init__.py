"""
ICS Mixture Package.

Posterior sampling for Pitman-Yor mixtures of Gaussian kernels: the
importance conditional sampler, a marginal urn sampler, dependent and
independent slice-efficient samplers, an importance conditional sampler for
grouped data under a Griffiths-Milne dependent Dirichlet process, MCMC
diagnostics, and a study of how many sticks slice samplers must draw.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-17 14:44:37
"""

# Set before the subpackages load: reporting stamps it into metadata.json
__version__ = '1.0.0'
__author__ = 'Barrhann'

from .exceptions import (
    ConfigurationError,
    DataFormatError,
    DegenerateLikelihoodError,
    DiagnosticsError,
    ICSMixtureError,
    NumericalError,
    ParameterDomainError,
    SamplerError
)
from .kernels import MixtureRealization, NIGBase, NIWBase, default_base
from .models import ChainConfig, Dataset, GMDDPParams, PYParams, RunConfig
from .randcore import RngStream
from .samplers import create_sampler, get_all_samplers
from .diagnostics import density_summary, deviance, ess
from .truncation import exceedance_table, sample_Ln, sample_Mn, truncation_study
from .core import fit, ingest_csv, run_chain
from .reporting import ReportGenerator
from .cli.main import main

__all__ = [
    # Errors
    'ICSMixtureError',
    'ParameterDomainError',
    'ConfigurationError',
    'DataFormatError',
    'NumericalError',
    'DegenerateLikelihoodError',
    'DiagnosticsError',
    'SamplerError',

    # Models and kernels
    'RngStream',
    'PYParams',
    'GMDDPParams',
    'ChainConfig',
    'RunConfig',
    'Dataset',
    'NIGBase',
    'NIWBase',
    'MixtureRealization',
    'default_base',

    # Sampling and analysis
    'create_sampler',
    'get_all_samplers',
    'run_chain',
    'fit',
    'ingest_csv',
    'ess',
    'deviance',
    'density_summary',
    'sample_Mn',
    'sample_Ln',
    'exceedance_table',
    'truncation_study',

    # Output and entry point
    'ReportGenerator',
    'main'
]

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture',
    'description': 'Importance conditional sampling for Pitman-Yor and GM-DDP mixtures',
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 14:44:37'
}


def get_version() -> str:
    """Get the current version of the package."""
    return __version__
