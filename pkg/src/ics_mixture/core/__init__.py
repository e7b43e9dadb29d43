"""
Core Package for ICS Mixture.

This package contains the components that turn a configuration into runs:
- data_reader: CSV ingestion and synthetic data
- config_loader: key = value files merged with command-line values
- chain_runner: one chain, its trace and its posterior summaries
- benchmark: replicated chains over a parameter grid

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 13:30:12
"""

from .benchmark import BenchmarkRunner, benchmark_frame, run_benchmark
from .chain_runner import ChainRunner, fit, prepare_chain, run_chain
from .config_loader import load_run_config, merge_config, read_config_file
from .data_reader import ingest_csv, synthetic_dataset, two_gaussian_sample

__all__ = [
    'ingest_csv',
    'synthetic_dataset',
    'two_gaussian_sample',
    'load_run_config',
    'merge_config',
    'read_config_file',
    'ChainRunner',
    'prepare_chain',
    'run_chain',
    'fit',
    'BenchmarkRunner',
    'benchmark_frame',
    'run_benchmark'
]

# Version information
__version__ = '1.0.0'
__author__ = 'Barrhann'

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture.core',
    'description': 'Data ingestion, configuration and run orchestration',
    'components': len(__all__),
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 13:30:12'
}


def get_package_info():
    """
    Get information about this package and its components.

    Returns:
        dict: Package metadata and component information
    """
    return {
        **PACKAGE_INFO,
        'components': {
            'ChainRunner': 'Runs one chain and summarizes its realizations',
            'BenchmarkRunner': 'Runs replicated chains over a parameter grid'
        }
    }
