from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from src.models.graph import GaugeAssignment
from src.utils.linalg import (
    contains_subspace,
    intersect_subspaces,
    largest_principal_angle,
    same_subspace,
    span_of,
)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal columns spanning a subspace of R^m."""
    columns: np.ndarray

    def __post_init__(self):
        arr = np.array(self.columns, dtype=float, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        arr.setflags(write=False)
        object.__setattr__(self, "columns", arr)

    @classmethod
    def full(cls, m: int) -> "SubspaceBasis":
        return cls(np.eye(m))

    @classmethod
    def zero(cls, m: int) -> "SubspaceBasis":
        return cls(np.zeros((m, 0)))

    @property
    def ambient(self) -> int:
        return self.columns.shape[0]

    @property
    def rank(self) -> int:
        return self.columns.shape[1]

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def is_full(self) -> bool:
        return self.rank == self.ambient

    def projector(self) -> np.ndarray:
        return self.columns @ self.columns.T

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.columns @ (self.columns.T @ x)

    def intersect(self, *others: "SubspaceBasis", tol: float = 1e-9) -> "SubspaceBasis":
        return SubspaceBasis(intersect_subspaces([self.columns, *[o.columns for o in others]], self.ambient, tol))

    def same_as(self, other: "SubspaceBasis", angle_tol: float = 1e-8) -> bool:
        return same_subspace(self.columns, other.columns, angle_tol)

    def contains(self, other: "SubspaceBasis", tol: float = 1e-8) -> bool:
        return contains_subspace(self.columns, other.columns, tol)

    def angle_to(self, other: "SubspaceBasis") -> float:
        return largest_principal_angle(self.columns, other.columns)

    def __repr__(self) -> str:
        return f"SubspaceBasis(ambient={self.ambient}, rank={self.rank})"


def intersection_of(bases: Sequence[SubspaceBasis], m: int, tol: float = 1e-9) -> SubspaceBasis:
    """Intersection of a (possibly empty) family; the empty family gives R^m."""
    return SubspaceBasis(intersect_subspaces([b.columns for b in bases], m, tol))


def sum_of(bases: Sequence[SubspaceBasis], m: int, tol: float = 1e-9) -> SubspaceBasis:
    """Linear span of the union of a family; the empty family gives {0}."""
    return SubspaceBasis(span_of([b.columns for b in bases], m, tol))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues and orthonormal eigenvectors of a Laplacian, with its rank rule applied."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    null_rank: int

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1]) if self.eigenvalues.size else 0.0

    @property
    def smallest_nonzero(self) -> Optional[float]:
        """lambda_2^+, the smallest eigenvalue above the rank threshold; None when L = 0."""
        if self.null_rank >= self.eigenvalues.size:
            return None
        return float(self.eigenvalues[self.null_rank])

    @property
    def null_basis(self) -> SubspaceBasis:
        return SubspaceBasis(self.eigenvectors[:, :self.null_rank])

    def clipped_eigenvalues(self) -> np.ndarray:
        """Eigenvalues with the numerically-zero ones set to exactly 0."""
        lam = np.array(self.eigenvalues, dtype=float)
        lam[:self.null_rank] = 0.0
        return lam

    def reconstruction_residual(self, matrix: np.ndarray) -> float:
        q = self.eigenvectors
        recon = (q * self.eigenvalues) @ q.T
        scale = max(float(np.linalg.norm(matrix, ord=np.inf)), 1.0) if matrix.size else 1.0
        return float(np.linalg.norm(matrix - recon, ord=np.inf)) / scale if matrix.size else 0.0


class SolutionKind(Enum):
    CONSENSUS = "Consensus"
    BIPARTITE = "BipartiteConsensus"
    CLUSTER = "Cluster"
    TRIVIAL = "Trivial"


@dataclass(frozen=True)
class SolutionClass:
    """Structure of null(L): the limit set of the collective dynamics."""
    kind: SolutionKind
    null_dim: int
    gauge: Optional[GaugeAssignment] = None
    psi: Optional[SubspaceBasis] = field(default=None, compare=False)

    @property
    def is_bipartite(self) -> bool:
        """Consensus counts as bipartite consensus with the identity gauge."""
        return self.kind in (SolutionKind.CONSENSUS, SolutionKind.BIPARTITE)
