"""
Sampler State Models.

This module defines the states the samplers evolve:
- AllocationState: cluster labels and distinct atoms of one sample
- MeasureSummary: the finite summary (s, t, p) of a Pitman-Yor realization
- SliceState: stick weights, atoms and slice variables of the slice samplers
- GMDDPState: per-process allocations and weights of the dependent sampler
- StepResult: what one sampler step hands back to the chain runner

Labels are zero-based throughout.

Created by: Barrhann
Created on: 2026-10-12
Last Updated: 2026-10-16 16:48:03
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import numpy as np

from ..exceptions import SamplerError
from ..kernels import AtomArray, MixtureRealization
from .params import PartitionCounts


@dataclass
class AllocationState:
    """
    Cluster allocation of n observations.

    Attributes:
        labels (np.ndarray): Cluster index in 0..k-1 per observation
        atoms (AtomArray): Distinct atom of each cluster
    """
    labels: np.ndarray
    atoms: AtomArray

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)

    @classmethod
    def compact(cls, labels: np.ndarray, atoms: AtomArray) -> 'AllocationState':
        """
        Drop unused atoms and relabel clusters in increasing atom order.

        Args:
            labels (np.ndarray): Indices into `atoms`
            atoms (AtomArray): Candidate atoms, possibly unused

        Returns:
            AllocationState: State whose clusters are all nonempty
        """
        used, new_labels = np.unique(np.asarray(labels, dtype=np.int64), return_inverse=True)
        return cls(new_labels.reshape(-1), atoms.take(used))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def k(self) -> int:
        return len(self.atoms)

    @property
    def counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def partition(self) -> PartitionCounts:
        return PartitionCounts(self.counts.tolist())

    def validate(self) -> bool:
        """
        Check the allocation invariants.

        Raises:
            SamplerError: If a label is out of range or a cluster is empty
        """
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.k):
            raise SamplerError("Allocation labels reference missing clusters")
        counts = self.counts
        if np.any(counts == 0):
            raise SamplerError(f"Allocation has empty clusters: {np.flatnonzero(counts == 0).tolist()}")
        if counts.sum() != self.n:
            raise SamplerError("Cluster frequencies do not sum to n")
        return True

    def frequencies_realization(self) -> MixtureRealization:
        """Mixture with weights n_j / n over the current atoms."""
        return MixtureRealization(self.counts / max(self.n, 1), self.atoms)


@dataclass
class MeasureSummary:
    """
    Finite summary (s, t, p) of a Pitman-Yor realization.

    Attributes:
        fixed_atoms (AtomArray): Atoms t of the current clusters
        aux_atoms (AtomArray): Distinct auxiliary atoms s*
        multiplicities (np.ndarray): Multiplicity of each auxiliary atom
        weights (np.ndarray): Simplex vector (p0, p1, ..., pk)
    """
    fixed_atoms: AtomArray
    aux_atoms: AtomArray
    multiplicities: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.multiplicities = np.asarray(self.multiplicities, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.size != len(self.fixed_atoms) + 1:
            raise SamplerError("Summary weights need one entry per fixed atom plus p0")
        if self.multiplicities.size != len(self.aux_atoms):
            raise SamplerError("One multiplicity per auxiliary atom is required")

    @property
    def m(self) -> int:
        return int(self.multiplicities.sum())

    @property
    def p0(self) -> float:
        return float(self.weights[0])

    def component_weights(self) -> np.ndarray:
        """Weights of the auxiliary atoms followed by the fixed atoms."""
        aux = self.p0 * self.multiplicities / max(self.m, 1)
        return np.concatenate([aux, self.weights[1:]])

    def component_atoms(self) -> AtomArray:
        return AtomArray.concatenate([self.aux_atoms, self.fixed_atoms])

    def realization(self) -> MixtureRealization:
        """Density realization p0 sum (m_l/m) K(.; s_l) + sum p_j K(.; t_j)."""
        return MixtureRealization(self.component_weights(), self.component_atoms())

    def log_likelihood_terms(self, X: np.ndarray) -> np.ndarray:
        """Log of the summary mixture density at each observation."""
        weights = self.component_weights()
        positive = weights > 0
        log_k = self.component_atoms().take(np.flatnonzero(positive)).log_kernel(X)
        log_k += np.log(weights[positive])[None, :]
        top = log_k.max(axis=1, keepdims=True)
        return (top + np.log(np.exp(log_k - top).sum(axis=1, keepdims=True)))[:, 0]


@dataclass
class SliceState:
    """
    State of the dependent or independent slice-efficient sampler.

    Attributes:
        labels (np.ndarray): Stick index per observation
        v (np.ndarray): Stick-breaking variables of the active sticks
        atoms (AtomArray): Atom of each active stick
        u (np.ndarray): Slice variable per observation
        variant (str): 'dependent' or 'independent'
        xi (Optional[np.ndarray]): Deterministic sequence E[p_j], independent variant only
    """
    labels: np.ndarray
    v: np.ndarray
    atoms: AtomArray
    u: np.ndarray
    variant: str = 'dependent'
    xi: Optional[np.ndarray] = None

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.v = np.asarray(self.v, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        if self.variant not in ('dependent', 'independent'):
            raise SamplerError(f"Unknown slice variant: {self.variant}")

    @property
    def k_active(self) -> int:
        return int(self.v.size)

    @property
    def log_leftover(self) -> float:
        return float(np.sum(np.log1p(-self.v)))

    @property
    def weights(self) -> np.ndarray:
        """Stick weights p_j = v_j prod_{l<j} (1 - v_l)."""
        log_remaining = np.concatenate([[0.0], np.cumsum(np.log1p(-self.v))[:-1]])
        return self.v * np.exp(log_remaining)

    @property
    def leftover(self) -> float:
        return float(np.exp(self.log_leftover))

    @property
    def bounds(self) -> np.ndarray:
        """Slice bound per stick: p_j (dependent) or xi_j (independent)."""
        return self.weights if self.variant == 'dependent' else self.xi

    @property
    def allocation(self) -> AllocationState:
        """Nonempty sticks compacted to 0..k-1 in stick order."""
        return AllocationState.compact(self.labels, self.atoms)

    def validate(self) -> bool:
        if self.labels.size and self.labels.max() >= self.k_active:
            raise SamplerError("Slice labels reference missing sticks")
        bounds = self.bounds
        if np.any(self.u >= bounds[self.labels]):
            raise SamplerError("Slice variables violate their constraint")
        if self.weights.sum() > 1.0 + 1e-12:
            raise SamplerError("Stick weights exceed unit mass")
        return self.allocation.validate()


@dataclass
class GMDDPState:
    """
    State of the Griffiths-Milne dependent sampler.

    Process 0 is the common process; process l + 1 is the idiosyncratic
    process of group l.

    Attributes:
        groups (np.ndarray): Group index in 0..L-1 per observation
        process (np.ndarray): Process index in 0..L per observation
        labels (np.ndarray): Cluster index within the process
        atoms (List[AtomArray]): Distinct atoms of each of the L + 1 processes
        w (np.ndarray): Idiosyncratic weights, shape (L,)
        summaries (List[MeasureSummary]): Summaries used by the last step
    """
    groups: np.ndarray
    process: np.ndarray
    labels: np.ndarray
    atoms: List[AtomArray]
    w: np.ndarray
    summaries: List[MeasureSummary] = field(default_factory=list)

    def __post_init__(self):
        self.groups = np.asarray(self.groups, dtype=np.int64)
        self.process = np.asarray(self.process, dtype=np.int64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.w = np.asarray(self.w, dtype=float)

    @property
    def L(self) -> int:
        return int(self.w.size)

    def process_counts(self, process: int) -> np.ndarray:
        """Cluster frequencies n_{j,process}, recomputed from the flags."""
        members = self.labels[self.process == process]
        return np.bincount(members, minlength=len(self.atoms[process]))

    def validate(self) -> bool:
        if len(self.atoms) != self.L + 1:
            raise SamplerError("GM-DDP state needs L + 1 atom sets")
        idiosyncratic = self.process > 0
        if np.any(self.process[idiosyncratic] != self.groups[idiosyncratic] + 1):
            raise SamplerError("Observations may only use their own group's idiosyncratic process")
        for process, atoms in enumerate(self.atoms):
            members = self.labels[self.process == process]
            if members.size and members.max() >= len(atoms):
                raise SamplerError(f"Labels of process {process} reference missing atoms")
            if np.any(self.process_counts(process) == 0):
                raise SamplerError(f"Process {process} has empty clusters")
        if np.any((self.w <= 0) | (self.w >= 1)):
            raise SamplerError("GM-DDP weights must lie strictly inside (0, 1)")
        return True

    def global_labels(self) -> np.ndarray:
        """Labels made distinct across processes."""
        offsets = np.concatenate([[0], np.cumsum([len(a) for a in self.atoms])])
        return offsets[self.process] + self.labels

    @property
    def allocation(self) -> AllocationState:
        return AllocationState(self.global_labels(), AtomArray.concatenate(self.atoms))

    def common_share(self) -> float:
        """Fraction of observations allocated to the common process."""
        return float(np.mean(self.process == 0)) if self.process.size else 0.0


@dataclass
class StepResult:
    """
    Outcome of one sampler step.

    Attributes:
        state: The updated sampler state
        realization: Density realization, one per group for grouped samplers
        jumps_drawn (int): Active sticks after extension (slice samplers)
        cap_hit (bool): Whether stick extension stopped at the cap
    """
    state: Union[AllocationState, SliceState, GMDDPState]
    realization: Union[MixtureRealization, Dict[int, MixtureRealization]]
    jumps_drawn: int = 0
    cap_hit: bool = False
