"""
Exceptions Module.

This module defines the exception hierarchy shared by every part of the
package. Each exception carries the process exit code the command-line
front end reports when it escapes a command.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-16 18:04:51
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class ICSMixtureError(Exception):
    """Base exception for all package errors."""
    exit_code = EXIT_USAGE


class ParameterDomainError(ICSMixtureError, ValueError):
    """Raised when a parameter lies outside its admissible domain."""
    exit_code = EXIT_USAGE


class ConfigurationError(ICSMixtureError):
    """Raised for invalid run configurations, flags or config files."""
    exit_code = EXIT_USAGE


class DataFormatError(ICSMixtureError):
    """Raised when input data cannot be parsed or is inconsistent."""
    exit_code = EXIT_DATA


class NumericalError(ICSMixtureError):
    """Raised when a computation breaks down numerically."""
    exit_code = EXIT_NUMERICAL


class DegenerateLikelihoodError(NumericalError):
    """Raised when every categorical weight of an observation vanishes."""
    pass


class DiagnosticsError(NumericalError):
    """Raised when a diagnostic is undefined for the supplied input."""
    pass


class SamplerError(ICSMixtureError):
    """Custom exception for sampler-related errors."""
    exit_code = EXIT_NUMERICAL
