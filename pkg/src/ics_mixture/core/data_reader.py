"""
Data Reader Module.

This module reads observation files for fitting and generates the built-in
synthetic data sets.

Input files are plain CSV with one or two numeric value columns and an
optional leading integer group column. A header row is optional and is
recognized when none of its cells parse as numbers.

Created by: Barrhann
Created on: 2026-10-15
Last Updated: 2026-10-17 12:04:51
"""

import logging
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from ..exceptions import DataFormatError, ParameterDomainError
from ..models.dataset import Dataset
from ..randcore import RngStream

logger = logging.getLogger(__name__)

SYNTHETIC_GENERATORS = ('two-gaussian',)
DATA_STREAM = 1 << 31
MAX_VALUE_COLUMNS = 2

# Components of the synthetic density: (weight, mean, sd)
TWO_GAUSSIAN = ((0.75, -2.5, 1.0), (0.25, 2.5, 1.0))


def _is_number(cell) -> bool:
    try:
        float(cell)
    except (TypeError, ValueError):
        return False
    return True


def _split_header(raw: pd.DataFrame) -> Tuple[pd.DataFrame, Optional[List[str]]]:
    """Separate a header row, if any."""
    first = raw.iloc[0]
    present = first.dropna()
    if len(present) and not any(_is_number(cell) for cell in present):
        return raw.iloc[1:], [str(cell).strip() for cell in first]
    return raw, None


def _parse_float(value: str, line: int, column: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise DataFormatError(f"Row {line}, column {column}: '{value}' is not a number")


def ingest_csv(path: str, require_groups: bool = False) -> Dataset:
    """
    Read observations from a CSV file.

    The leading column is a group index when the header names it 'group',
    when the file has three columns, or when groups are required. Rows are
    reported by their line number in the file.

    Args:
        path (str): Path to the CSV file
        require_groups (bool): Whether a group column must be present

    Returns:
        Dataset: Parsed observations with group labels

    Raises:
        DataFormatError: If the file is missing, empty or malformed, or lacks
            a required group column
    """
    filepath = Path(path)
    if not filepath.is_file():
        raise DataFormatError(f"Input file not found: {path}")

    try:
        raw = pd.read_csv(filepath, header=None, dtype=str, skip_blank_lines=False,
                          skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise DataFormatError(f"Input file is empty: {path}")
    except pd.errors.ParserError as e:
        raise DataFormatError(f"Could not parse {path}: {e}")

    # Line numbers follow the file, so blank lines are dropped only after indexing
    raw.index = np.arange(1, len(raw) + 1)
    raw = raw.dropna(how='all')
    if raw.empty:
        raise DataFormatError(f"Input file is empty: {path}")

    body, names = _split_header(raw)
    if body.empty:
        raise DataFormatError(f"Input file has a header but no observations: {path}")

    n_columns = raw.shape[1]
    named_group = bool(names) and names[0].lower() == 'group'
    has_groups = require_groups or named_group or n_columns == MAX_VALUE_COLUMNS + 1
    if require_groups and n_columns < 2:
        raise DataFormatError(f"{path}: a leading group column is required for grouped models")
    value_count = n_columns - int(has_groups)
    if not 1 <= value_count <= MAX_VALUE_COLUMNS:
        raise DataFormatError(f"{path}: expected 1 or 2 value columns, found {value_count}")

    values = np.empty((len(body), value_count))
    groups = np.empty(len(body), dtype=np.int64) if has_groups else None
    for row, (line, record) in enumerate(body.iterrows()):
        cells = record.tolist()
        for column, cell in enumerate(cells, start=1):
            if pd.isna(cell):
                raise DataFormatError(f"Row {line}, column {column}: missing value")
        if has_groups:
            number = _parse_float(cells[0], line, 1)
            if not float(number).is_integer():
                raise DataFormatError(f"Row {line}, column 1: group label '{cells[0]}' is not an integer")
            groups[row] = int(number)
        offset = int(has_groups)
        for j in range(value_count):
            values[row, j] = _parse_float(cells[offset + j], line, offset + j + 1)

    if not np.all(np.isfinite(values)):
        raise DataFormatError(f"{path}: non-finite values are not allowed")

    columns = names[int(has_groups):] if names else []
    dataset = Dataset(values, groups=groups, columns=columns, source=str(filepath))
    logger.info("Read %d observations (d=%d, groups=%d) from %s",
                dataset.n, dataset.dim, dataset.n_groups, filepath)
    return dataset


def two_gaussian_sample(rng: RngStream, n: int) -> np.ndarray:
    """
    Draw n values from 0.75 N(-2.5, 1) + 0.25 N(2.5, 1).

    Args:
        rng (RngStream): Source of randomness
        n (int): Sample size

    Returns:
        np.ndarray: Draws, shape (n,)
    """
    if n < 1:
        raise ParameterDomainError(f"Sample size must be positive, got {n}")
    gen = rng.generator
    weights, means, sds = (np.array(column) for column in zip(*TWO_GAUSSIAN))
    component = gen.choice(len(weights), size=n, p=weights)
    return gen.normal(means[component], sds[component])


def synthetic_dataset(name: str, n: int, seed: int, n_groups: int = 0) -> Dataset:
    """
    Build a synthetic data set.

    Draws come from RngStream(seed).substream(DATA_STREAM), a stream no
    sampler iteration uses. With n_groups > 0 the observations are split
    into contiguous groups of near-equal size, each drawn from the same
    density.

    Args:
        name (str): Generator name, one of SYNTHETIC_GENERATORS
        n (int): Total sample size
        seed (int): Root seed
        n_groups (int): Number of groups, 0 for ungrouped data

    Returns:
        Dataset: The synthetic observations
    """
    if name not in SYNTHETIC_GENERATORS:
        raise DataFormatError(
            f"Unknown synthetic generator '{name}'. Available: {', '.join(SYNTHETIC_GENERATORS)}"
        )
    if n_groups < 0 or n_groups > n:
        raise ParameterDomainError(f"Cannot split {n} observations into {n_groups} groups")

    X = two_gaussian_sample(RngStream(seed).substream(DATA_STREAM), n)
    groups = None
    if n_groups:
        groups = np.repeat(np.arange(1, n_groups + 1), np.diff(np.linspace(0, n, n_groups + 1).round().astype(int)))
    logger.debug("Generated %d synthetic observations from %s", n, name)
    return Dataset(X, groups=groups, source=f'synthetic:{name}')
