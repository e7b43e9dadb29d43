"""
Chain Trace Model.

Per-iteration records of a Markov chain: cluster count, deviance, density
realizations on a fixed grid, wall-clock time, stick extension counts and
cap hits. Only iterations after burn-in are recorded.

Created by: Barrhann
Created on: 2026-10-13
Last Updated: 2026-10-16 17:12:44
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..exceptions import SamplerError


@dataclass
class ChainTrace:
    """
    Retained iterations of one chain.

    Attributes:
        algorithm (str): Sampler name
        deviance_mode (str): 'log' or 'literal'
        iterations (List[int]): Iteration index of each record
        k_n (List[int]): Number of occupied clusters
        deviance (List[float]): Deviance of the current clustering
        seconds (List[float]): Wall-clock seconds spent in the step
        jumps_drawn (List[int]): Active sticks after extension
        cap_hit (List[bool]): Whether the stick cap stopped extension
        functionals (Dict[str, List[np.ndarray]]): Grid evaluations keyed by name
        w (List[np.ndarray]): GM-DDP weights, empty for other samplers
        metadata (Dict[str, Any]): Sampler metadata collected at the end
    """
    algorithm: str
    deviance_mode: str = 'log'
    iterations: List[int] = field(default_factory=list)
    k_n: List[int] = field(default_factory=list)
    deviance: List[float] = field(default_factory=list)
    seconds: List[float] = field(default_factory=list)
    jumps_drawn: List[int] = field(default_factory=list)
    cap_hit: List[bool] = field(default_factory=list)
    functionals: Dict[str, List[np.ndarray]] = field(default_factory=dict)
    w: List[np.ndarray] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def record(self, iteration: int, k_n: int, deviance: float, seconds: float,
               jumps_drawn: int = 0, cap_hit: bool = False,
               functionals: Optional[Dict[str, np.ndarray]] = None,
               w: Optional[np.ndarray] = None) -> None:
        """Append one retained iteration."""
        self.iterations.append(int(iteration))
        self.k_n.append(int(k_n))
        self.deviance.append(float(deviance))
        self.seconds.append(float(seconds))
        self.jumps_drawn.append(int(jumps_drawn))
        self.cap_hit.append(bool(cap_hit))
        for name, values in (functionals or {}).items():
            self.functionals.setdefault(name, []).append(np.asarray(values, dtype=float))
        if w is not None:
            self.w.append(np.asarray(w, dtype=float).copy())

    def __len__(self) -> int:
        return len(self.iterations)

    def validate(self) -> bool:
        """Check that every per-iteration column has the trace length."""
        size = len(self)
        columns = [self.k_n, self.deviance, self.seconds, self.jumps_drawn, self.cap_hit]
        columns += list(self.functionals.values())
        if self.w:
            columns.append(self.w)
        if any(len(column) != size for column in columns):
            raise SamplerError("Trace columns have inconsistent lengths")
        return True

    @property
    def cap_hit_count(self) -> int:
        return int(sum(self.cap_hit))

    @property
    def cap_hit_frequency(self) -> float:
        return self.cap_hit_count / len(self) if len(self) else 0.0

    @property
    def mean_jumps(self) -> float:
        return float(np.mean(self.jumps_drawn)) if len(self) else 0.0

    @property
    def total_seconds(self) -> float:
        return float(np.sum(self.seconds))

    def realizations(self, name: str = 'density') -> np.ndarray:
        """Stack the recorded grid evaluations of one functional."""
        if name not in self.functionals:
            raise SamplerError(f"No functional '{name}' was recorded")
        return np.stack(self.functionals[name])

    def to_frame(self) -> pd.DataFrame:
        """Trace table with one row per retained iteration."""
        frame = pd.DataFrame({
            'iteration': self.iterations,
            'k_n': self.k_n,
            'deviance': self.deviance,
            'seconds': self.seconds,
            'jumps_drawn': self.jumps_drawn,
            'cap_hit': [int(flag) for flag in self.cap_hit],
        })
        if self.w:
            weights = np.stack(self.w)
            for group in range(weights.shape[1]):
                frame[f'w_{group + 1}'] = weights[:, group]
        return frame

    def get_summary(self) -> Dict[str, Any]:
        return {
            'algorithm': self.algorithm,
            'retained_iterations': len(self),
            'mean_k_n': float(np.mean(self.k_n)) if len(self) else None,
            'cap_hit_count': self.cap_hit_count,
            'cap_hit_frequency': self.cap_hit_frequency,
            'mean_jumps': self.mean_jumps,
            'total_seconds': self.total_seconds,
            'deviance_mode': self.deviance_mode,
        }

    def __str__(self) -> str:
        return f"ChainTrace({self.algorithm}, {len(self)} iterations)"
