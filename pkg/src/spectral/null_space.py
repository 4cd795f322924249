"""
Null space of the Laplacian and the spectral prediction of the limit state.

x(t) = Q e^{-Lambda t} Q^T x(0) tends to the orthogonal projection of x(0) onto null(L).
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as sla

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.models.graph import Laplacian, MatrixWeightedGraph
from src.models.subspace import SpectralDecomposition, SubspaceBasis
from src.utils.linalg import inf_norm, rank_threshold

logger = logging.getLogger(__name__)


def decompose(laplacian: Laplacian, tol: Tolerances = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    """Dense symmetric eigendecomposition; eigenvalues <= tol_rank * max(lambda_max, 1) count as zero."""
    blocks = laplacian.blocks
    if blocks.size == 0:
        return SpectralDecomposition(np.zeros(0), np.zeros((0, 0)), 0)
    eigenvalues, eigenvectors = sla.eigh(blocks)
    threshold = rank_threshold(max(eigenvalues[-1], 0.0), tol.rank)
    null_rank = int(np.count_nonzero(eigenvalues <= threshold))
    logger.debug(f"Laplacian spectrum: lambda_max={eigenvalues[-1]:.6g}, null rank={null_rank}")
    return SpectralDecomposition(eigenvalues, eigenvectors, null_rank)


def null_space_basis(laplacian: Laplacian, tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    return decompose(laplacian, tol).null_basis


def predicted_limit(decomposition: SpectralDecomposition, x0: np.ndarray) -> np.ndarray:
    return decomposition.null_basis.project(np.asarray(x0, dtype=float))


def asymptotic_state(laplacian: Laplacian, x0: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Orthogonal projection of x0 onto null(L), the limit of x' = -Lx."""
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (laplacian.n * laplacian.d,):
        raise ValueError(f"initial state must have length {laplacian.n * laplacian.d}, got shape {x0.shape}")
    return predicted_limit(decompose(laplacian, tol), x0)


@dataclass(frozen=True)
class NullVectorReport:
    """Per-edge residuals ||A_ij (x_i - sgn(A_ij) x_j)||_inf of a candidate null vector."""
    residuals: Tuple[Tuple[str, str, float], ...]
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max((r for _, _, r in self.residuals), default=0.0)

    @property
    def passes(self) -> bool:
        return self.max_residual <= self.tolerance

    def failing_edges(self) -> list:
        return [(u, v) for u, v, r in self.residuals if r > self.tolerance]


def verify_null_vector(graph: MatrixWeightedGraph, x: np.ndarray, tol: Optional[float] = None) -> NullVectorReport:
    """
    Edge-wise test of Lx = 0: x is in null(L) iff A_ij (x_i - sgn(A_ij) x_j) = 0 on every edge.

    The default tolerance is 1e-8 * max(||x||_inf, 1).
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (graph.n * graph.dim,):
        raise ValueError(f"state must have length {graph.n * graph.dim}, got shape {x.shape}")
    if tol is None:
        tol = 1e-8 * max(inf_norm(x), 1.0)
    residuals = []
    for e in graph.edges:
        diff = graph.block(x, e.u) - e.sign * graph.block(x, e.v)
        residuals.append((e.u, e.v, inf_norm(e.weight.entries @ diff)))
    return NullVectorReport(tuple(residuals), float(tol))
