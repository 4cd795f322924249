"""
Dense linear-algebra helpers shared by every module that decides whether a subspace is trivial.

All rank decisions use one rule: a singular value (or eigenvalue of a PSD matrix) counts as zero
when it is <= tol * max(largest, 1).
"""
from typing import Sequence

import numpy as np
import scipy.linalg as sla


def rank_threshold(largest: float, tol: float) -> float:
    return tol * max(float(largest), 1.0)


def numerical_rank(matrix: np.ndarray, tol: float = 1e-9) -> int:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.size == 0:
        return 0
    s = sla.svdvals(matrix)
    return int(np.count_nonzero(s > rank_threshold(s[0], tol)))


def numerical_null_space(matrix: np.ndarray, tol: float = 1e-9, n_cols: int | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the right null space of `matrix`."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        matrix = np.atleast_2d(matrix)
    n = matrix.shape[1] if n_cols is None else n_cols
    if matrix.size == 0:
        return np.eye(n)
    _, s, vh = sla.svd(matrix, full_matrices=True)
    rank = int(np.count_nonzero(s > rank_threshold(s[0], tol)))
    return vh[rank:].T.copy()


def orthonormal_range(matrix: np.ndarray, tol: float = 1e-9, n_rows: int | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of `matrix`."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    m = matrix.shape[0] if n_rows is None else n_rows
    if matrix.size == 0:
        return np.zeros((m, 0))
    u, s, _ = sla.svd(matrix, full_matrices=False)
    rank = int(np.count_nonzero(s > rank_threshold(s[0], tol)))
    return u[:, :rank].copy()


def complement_projector(basis: np.ndarray) -> np.ndarray:
    """I - B B^T for an orthonormal basis B."""
    n = basis.shape[0]
    return np.eye(n) - basis @ basis.T


def intersect_subspaces(bases: Sequence[np.ndarray], n: int, tol: float = 1e-9) -> np.ndarray:
    """
    Orthonormal basis of the intersection of the spans of `bases`.

    An empty list intersects to the whole space R^n.
    """
    if len(bases) == 0:
        return np.eye(n)
    if any(b.shape[1] == 0 for b in bases):
        return np.zeros((n, 0))
    stacked = np.vstack([complement_projector(b) for b in bases])
    return numerical_null_space(stacked, tol, n_cols=n)


def span_of(bases: Sequence[np.ndarray], n: int, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the sum of the spans of `bases`."""
    cols = [b for b in bases if b.shape[1] > 0]
    if not cols:
        return np.zeros((n, 0))
    return orthonormal_range(np.hstack(cols), tol, n_rows=n)


def largest_principal_angle(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape[1] == 0 and b.shape[1] == 0:
        return 0.0
    if a.shape[1] == 0 or b.shape[1] == 0:
        return float(np.pi / 2)
    return float(np.max(sla.subspace_angles(a, b)))


def same_subspace(a: np.ndarray, b: np.ndarray, angle_tol: float = 1e-8) -> bool:
    if a.shape[1] != b.shape[1]:
        return False
    return largest_principal_angle(a, b) <= angle_tol


def contains_subspace(outer: np.ndarray, inner: np.ndarray, tol: float = 1e-8) -> bool:
    """True when span(inner) lies inside span(outer) (both orthonormal)."""
    if inner.shape[1] == 0:
        return True
    if outer.shape[1] == 0:
        return False
    residual = inner - outer @ (outer.T @ inner)
    return float(np.max(np.abs(residual))) <= tol


def inf_norm(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return 0.0
    if x.ndim == 1:
        return float(np.max(np.abs(x)))
    return float(np.linalg.norm(x, ord=np.inf))
