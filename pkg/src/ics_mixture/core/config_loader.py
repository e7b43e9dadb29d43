"""
Configuration Loader Module.

Reads flat `key = value` configuration files and merges them with
command-line values into a RunConfig. Precedence is command line, then
file, then the RunConfig defaults.

Keys are RunConfig field names; dashes and underscores are interchangeable.
Lines starting with '#' and blank lines are ignored, as is anything after a
'#' on a value line. List values are separated by commas or whitespace.

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 13:02:16
"""

import logging
import re
import typing
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..exceptions import ConfigurationError, ICSMixtureError
from ..models.config import RunConfig

logger = logging.getLogger(__name__)

_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}
_NONE = {'', 'none', 'null'}


def normalize_key(key: str) -> str:
    return key.strip().lower().replace('-', '_')


def _field_types() -> Dict[str, Any]:
    hints = typing.get_type_hints(RunConfig)
    return {f.name: hints[f.name] for f in fields(RunConfig)}


def _scalar(raw: str, kind: type, key: str):
    text = raw.strip()
    try:
        if kind is bool:
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(text)
        if kind is int:
            number = float(text)
            if not number.is_integer():
                raise ValueError(text)
            return int(number)
        if kind is float:
            return float(text)
    except ValueError:
        raise ConfigurationError(f"Invalid value for '{key}': '{raw}' is not a valid {kind.__name__}")
    return text


def coerce_value(key: str, raw: Union[str, Any], hint: Any) -> Any:
    """
    Convert a raw file value to the type a RunConfig field expects.

    Args:
        key (str): Field name, for error messages
        raw: Raw value; non-string values are returned as they are
        hint: Type hint of the field

    Returns:
        Any: The converted value

    Raises:
        ConfigurationError: If the value cannot be converted
    """
    if not isinstance(raw, str):
        return raw
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin is Union and type(None) in args:
        if raw.strip().lower() in _NONE:
            return None
        hint = next(a for a in args if a is not type(None))
        origin, args = typing.get_origin(hint), typing.get_args(hint)
    if origin in (list, List):
        items = [item for item in re.split(r'[,\s]+', raw.strip()) if item]
        return [_scalar(item, args[0], key) for item in items]
    return _scalar(raw, hint, key)


def read_config_file(path: str) -> Dict[str, Any]:
    """
    Parse a flat key = value file.

    Args:
        path (str): Path to the configuration file

    Returns:
        Dict[str, Any]: Values converted to the RunConfig field types

    Raises:
        ConfigurationError: On a missing file, a line without '=', an unknown
            key or a value of the wrong type
    """
    filepath = Path(path)
    if not filepath.is_file():
        raise ConfigurationError(f"Configuration file not found: {path}")

    types = _field_types()
    values: Dict[str, Any] = {}
    with open(filepath, 'r', encoding='utf-8') as f:
        for line_number, line in enumerate(f, start=1):
            text = line.split('#', 1)[0].strip()
            if not text:
                continue
            if '=' not in text:
                raise ConfigurationError(f"{path}, line {line_number}: expected 'key = value', got '{text}'")
            key, raw = text.split('=', 1)
            key = normalize_key(key)
            if key not in types:
                raise ConfigurationError(f"{path}, line {line_number}: unknown key '{key}'")
            values[key] = coerce_value(key, raw, types[key])

    logger.debug("Read %d configuration values from %s", len(values), filepath)
    return values


def merge_config(cli_values: Optional[Dict[str, Any]] = None,
                 file_values: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Merge command-line and file values over the RunConfig defaults.

    Args:
        cli_values (Optional[Dict[str, Any]]): Values given on the command line
        file_values (Optional[Dict[str, Any]]): Values read from a file

    Returns:
        RunConfig: The resolved configuration

    Raises:
        ConfigurationError: If a value is unknown or violates a constraint
    """
    types = _field_types()
    merged: Dict[str, Any] = {}
    for source in (file_values or {}, cli_values or {}):
        for key, value in source.items():
            key = normalize_key(key)
            if key not in types:
                raise ConfigurationError(f"Unknown configuration key '{key}'")
            if value is not None:
                merged[key] = coerce_value(key, value, types[key])
    try:
        return RunConfig(**merged)
    except ICSMixtureError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid configuration: {e}")


def load_run_config(cli_values: Optional[Dict[str, Any]] = None,
                    config_path: Optional[str] = None) -> RunConfig:
    """Read the optional file and merge it with the command-line values."""
    file_values = read_config_file(config_path) if config_path else {}
    config = merge_config(cli_values, file_values)
    logger.debug("Resolved configuration: %s", config.to_dict())
    return config
