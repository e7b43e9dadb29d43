"""
Report Templates Package.

This package provides the template for the Markdown run summary.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 13:48:55
"""

from .markdown_template import MarkdownTemplate

__all__ = [
    'MarkdownTemplate'
]

# Version information
__version__ = '1.0.0'
__author__ = 'Barrhann'

# Package metadata
PACKAGE_INFO = {
    'name': 'ics_mixture.reporting.templates',
    'description': 'Templates for run summaries',
    'templates': len(__all__),
    'version': __version__,
    'author': __author__,
    'last_updated': '2026-10-17 13:48:55'
}
