"""
Base Sampler Module.

This module provides the abstract base class for all mixture samplers.
It defines the interface the chain runner drives and the blockwise,
optionally threaded, categorical allocation the conditional samplers share.

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-16 20:14:37
"""

import concurrent.futures
import logging
from abc import ABC, abstractmethod
from datetime import datetime, timezone
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..exceptions import DegenerateLikelihoodError, SamplerError
from ..kernels import BaseMeasure
from ..models.state import AllocationState, StepResult
from ..randcore import RngStream, categorical_from_log_weights

logger = logging.getLogger(__name__)

BLOCK_SIZE = 256


def allocate_in_blocks(rng: RngStream, n: int, draw_block: Callable[[slice, np.ndarray], np.ndarray],
                       executor: Optional[concurrent.futures.Executor] = None) -> np.ndarray:
    """
    Draw one categorical outcome per observation, block by block.

    Rows are split into fixed blocks of BLOCK_SIZE; block b draws its
    uniforms from rng.substream(b). The executor only schedules blocks, so
    the outcome is identical with or without it.

    Args:
        rng (RngStream): Stream of this iteration
        n (int): Number of observations
        draw_block (Callable[[slice, np.ndarray], np.ndarray]): Maps a row slice
            and one uniform per row to the outcome of each row
        executor (Optional[concurrent.futures.Executor]): Worker pool

    Returns:
        np.ndarray: Outcome index per observation

    Raises:
        DegenerateLikelihoodError: If some observation has no admissible outcome
    """
    blocks = [slice(start, min(start + BLOCK_SIZE, n)) for start in range(0, n, BLOCK_SIZE)]
    choices = np.empty(n, dtype=np.int64)

    def run_block(index: int) -> np.ndarray:
        rows = blocks[index]
        uniforms = rng.substream(index).generator.random(rows.stop - rows.start)
        return draw_block(rows, uniforms)

    if executor is None or len(blocks) == 1:
        for index, rows in enumerate(blocks):
            choices[rows] = run_block(index)
        return choices

    futures = {executor.submit(run_block, index): index for index in range(len(blocks))}
    errors = []
    for future in concurrent.futures.as_completed(futures):
        index = futures[future]
        try:
            choices[blocks[index]] = future.result()
        except DegenerateLikelihoodError as e:
            errors.append(f"block {index}: {e}")
    if errors:
        raise DegenerateLikelihoodError('; '.join(sorted(errors)))
    return choices


def categorical_block(log_weights: Callable[[slice], np.ndarray]) -> Callable[[slice, np.ndarray], np.ndarray]:
    """Wrap a row-slice to log-weight-matrix map as a block draw for allocate_in_blocks."""
    def draw_block(rows: slice, uniforms: np.ndarray) -> np.ndarray:
        return categorical_from_log_weights(uniforms, log_weights(rows))
    return draw_block


class BaseSampler(ABC):
    """
    Abstract base class for all mixture samplers.

    Each sampler owns the (standardized) data and a base measure, builds its
    initial state, and advances it one iteration at a time. Allocation over
    observations is split into fixed blocks of BLOCK_SIZE rows with one
    substream per block, so the result does not depend on how many threads
    process the blocks.

    Attributes:
        name (str): Registry name of the sampler
        data (np.ndarray): Observations, shape (n, d)
        base (BaseMeasure): Conjugate base measure
        threads (int): Worker threads for blockwise allocation
        created_at (datetime): Timestamp when the sampler was instantiated
    """

    def __init__(self, name: str, data: np.ndarray, base: BaseMeasure, threads: int = 1):
        """
        Initialize the base sampler.

        Args:
            name (str): Registry name of the sampler
            data (np.ndarray): Observations, shape (n, d)
            base (BaseMeasure): Conjugate base measure
            threads (int): Worker threads for blockwise allocation

        Raises:
            SamplerError: If data is empty or its dimension disagrees with base
        """
        if not isinstance(name, str) or not name.strip():
            raise SamplerError("Sampler name must be a non-empty string")
        data = np.asarray(data, dtype=float)
        if data.ndim == 1:
            data = data[:, None]
        if data.shape[0] == 0:
            raise SamplerError("Samplers need at least one observation")
        if data.shape[1] != base.dim:
            raise SamplerError(f"Data dimension {data.shape[1]} does not match base dimension {base.dim}")

        self.name = name.strip()
        self.data = data
        self.base = base
        self.threads = max(1, int(threads))
        self.created_at = datetime.now(timezone.utc)
        self._step_count = 0
        self._executor: Optional[concurrent.futures.ThreadPoolExecutor] = None

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    @property
    def step_count(self) -> int:
        return self._step_count

    @abstractmethod
    def initialize(self, rng: RngStream):
        """
        Build the initial state: one cluster holding every observation.

        Args:
            rng (RngStream): Source of randomness

        Returns:
            The sampler's state object
        """
        raise NotImplementedError("Samplers must implement initialize")

    @abstractmethod
    def step(self, rng: RngStream, state) -> StepResult:
        """
        Advance the chain by one iteration.

        Args:
            rng (RngStream): Stream of this iteration
            state: Current state

        Returns:
            StepResult: New state, density realization and stick statistics
        """
        raise NotImplementedError("Samplers must implement step")

    def allocation(self, state) -> AllocationState:
        """Allocation view of a state."""
        if isinstance(state, AllocationState):
            return state
        return state.allocation

    def cluster_count(self, state) -> int:
        return self.allocation(state).k

    def get_metadata(self) -> Dict[str, Any]:
        """
        Get metadata about the sampler.

        Returns:
            Dict[str, Any]: Sampler name, base measure, data size and step count
        """
        return {
            'name': self.name,
            'created_at': self.created_at.isoformat(),
            'base': self.base.to_dict(),
            'n': self.n,
            'dim': int(self.data.shape[1]),
            'threads': self.threads,
            'steps': self._step_count,
        }

    @property
    def executor(self) -> Optional[concurrent.futures.ThreadPoolExecutor]:
        """Worker pool for blockwise allocation, None when single-threaded."""
        if self.threads == 1:
            return None
        if self._executor is None:
            self._executor = concurrent.futures.ThreadPoolExecutor(max_workers=self.threads)
        return self._executor

    def close(self) -> None:
        """Shut down the worker pool, if any."""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> 'BaseSampler':
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.close()

    def _advance(self) -> None:
        self._step_count += 1

    def __str__(self) -> str:
        return f"{self.name} sampler (n={self.n}, steps={self._step_count})"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}', n={self.n}, threads={self.threads})"
