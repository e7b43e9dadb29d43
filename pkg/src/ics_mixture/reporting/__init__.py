"""
ICS Mixture Reporting Package.

This package writes the result files of every command: CSV tables,
metadata.json and the Markdown run summary.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 14:08:02
"""

from .report_generator import OUTPUT_FILES, SCHEMA_VERSION, ReportGenerator
from .templates import MarkdownTemplate

__all__ = [
    'ReportGenerator',
    'MarkdownTemplate',
    'OUTPUT_FILES',
    'SCHEMA_VERSION'
]

# Version information
__version__ = '1.0.0'
__author__ = 'Barrhann'

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture.reporting',
    'description': 'Result files for fits, benchmarks and truncation studies',
    'output_files': OUTPUT_FILES,
    'schema_version': SCHEMA_VERSION,
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 14:08:02'
}


def create_report_generator(output_dir: str = "results") -> ReportGenerator:
    """
    Create a report generator writing into output_dir.

    Args:
        output_dir (str): Directory for the result files

    Returns:
        ReportGenerator: Configured report generator
    """
    return ReportGenerator(output_dir)
