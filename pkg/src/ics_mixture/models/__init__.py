"""
Models Package for ICS Mixture.

This package contains the data models used throughout the package:
- PYParams, GMDDPParams, PartitionCounts: process parameters and partitions
- AllocationState, MeasureSummary, SliceState, GMDDPState: sampler states
- ChainTrace: per-iteration chain records
- DensitySummary, TruncationReport, BenchmarkRecord: results
- GridSpec, ChainConfig, RunConfig: configuration
- Dataset, Standardizer: input data

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-17 09:05:10
"""

from .config import ALGORITHMS, ChainConfig, GridSpec, RunConfig
from .dataset import Dataset, Standardizer
from .params import GMDDPParams, PartitionCounts, PYParams
from .results import BenchmarkRecord, DensitySummary, TruncationReport
from .state import AllocationState, GMDDPState, MeasureSummary, SliceState, StepResult
from .trace import ChainTrace

__all__ = [
    'ALGORITHMS',
    'PYParams',
    'GMDDPParams',
    'PartitionCounts',
    'AllocationState',
    'MeasureSummary',
    'SliceState',
    'GMDDPState',
    'StepResult',
    'ChainTrace',
    'DensitySummary',
    'TruncationReport',
    'BenchmarkRecord',
    'GridSpec',
    'ChainConfig',
    'RunConfig',
    'Dataset',
    'Standardizer'
]

# Version information
__version__ = '1.0.0'
__author__ = 'Barrhann'

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture.models',
    'description': 'Data models for Pitman-Yor mixture sampling',
    'models': len(__all__),
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 09:05:10'
}
