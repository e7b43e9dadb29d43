"""
Setup configuration for the ics-mixture package.

This module contains the package configuration for installation and distribution.
It defines dependencies, entry points, and package metadata.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-17 14:51:20
"""

from setuptools import setup, find_packages

setup(
    name="ics-mixture",
    version="1.0.0",
    packages=find_packages(where="src"),
    package_dir={"": "src"},

    # Required dependencies
    install_requires=[
        "numpy>=1.22.0",          # Arrays and Philox random streams
        "scipy>=1.10.0",          # Special functions, distributions, trapezoid
        "pandas>=1.5.0",          # CSV ingestion and outputs
        "jinja2>=3.0.0",          # For template rendering
    ],

    extras_require={
        'test': [
            "pytest>=7.0.0",
            "hypothesis>=6.0.0",
        ],
    },

    # CLI entry point
    entry_points={
        'console_scripts': [
            'ics-mixture=ics_mixture.cli:main',
        ],
    },

    # Package metadata
    author="Barrhann",
    author_email="barrhann@github.com",
    description="Importance conditional sampling for Pitman-Yor and GM-DDP mixtures",

    # Python version support
    python_requires=">=3.8",

    # Classifiers
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
