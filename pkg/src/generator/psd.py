"""Random weights with prescribed null spaces."""
from typing import Optional

import numpy as np

from src.models.weight import WeightMatrix

DEFINITE_EIGEN_RANGE = (0.5, 2.0)
EIGEN_GAP = 0.1


def as_rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def random_orthogonal_frame(d: int, rng=None, axis_aligned: bool = False) -> np.ndarray:
    """Orthogonal d x d matrix; the identity when `axis_aligned`."""
    if axis_aligned:
        return np.eye(d)
    rng = as_rng(rng)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def random_definite(d: int, rng=None, sign: int = 1) -> WeightMatrix:
    """sign * Q diag(lambda) Q^T with lambda uniform in [0.5, 2]."""
    rng = as_rng(rng)
    q = random_orthogonal_frame(d, rng)
    lam = rng.uniform(*DEFINITE_EIGEN_RANGE, size=d)
    m = (q * lam) @ q.T
    return WeightMatrix(sign * (m + m.T) / 2)


def make_psd(d: int, null_basis: Optional[np.ndarray], rng=None, sign: int = 1) -> WeightMatrix:
    """
    PSD weight whose null space is exactly span(null_basis): G = P (M^T M + 0.1 I) P with P the
    projector onto the orthogonal complement, so every nonzero eigenvalue is at least 0.1.
    """
    rng = as_rng(rng)
    if null_basis is None:
        null_basis = np.zeros((d, 0))
    null_basis = np.asarray(null_basis, dtype=float).reshape(d, -1)
    p = np.eye(d) - null_basis @ null_basis.T
    m = rng.standard_normal((d, d))
    g = p @ (m.T @ m + EIGEN_GAP * np.eye(d)) @ p
    return WeightMatrix(sign * (g + g.T) / 2)
