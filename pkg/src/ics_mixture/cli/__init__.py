"""
ICS Mixture CLI Package.

This package provides the command-line interface for fitting Pitman-Yor and
GM-DDP mixtures, benchmarking samplers and running truncation studies.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 14:42:10
"""

from .main import build_parser, main

__all__ = ['main', 'build_parser']

# Version information
__version__ = '1.0.0'
__author__ = 'Barrhann'

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture.cli',
    'description': 'Command-line interface for mixture sampling studies',
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 14:42:10',
    'commands': ['fit', 'benchmark', 'truncation'],
    'supported_formats': {
        'input': ['.csv'],
        'output': ['.csv', '.json', '.md']
    }
}


def get_cli_info() -> dict:
    """
    Get information about the CLI package.

    Returns:
        dict: CLI package information and capabilities
    """
    return PACKAGE_INFO
