"""
Matrix-valued sign calculus.

sgn(Q) is +1 for a nonzero positive semidefinite weight, -1 for a nonzero negative semidefinite
one and 0 for the zero matrix; |Q| = sgn(Q) Q. Eigenvalues within tol_def * ||Q||_2 of zero count
as zero.
"""
import logging

import numpy as np
import scipy.linalg as sla

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.graph import AsymmetricWeightError, DimensionMismatchError, IndefiniteWeightError
from src.models.subspace import SubspaceBasis
from src.models.weight import Definiteness, SignClass, WeightMatrix

logger = logging.getLogger(__name__)


def symmetrize_weight(entries, tol: Tolerances = DEFAULT_TOLERANCES, where: str = "",
                      dim: int | None = None) -> WeightMatrix:
    """
    Return the weight as a `WeightMatrix`, symmetrized as (M + M^T) / 2 when the asymmetry is
    within tol_sym * max(1, ||M||_inf).
    """
    arr = np.asarray(entries, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or (dim is not None and arr.shape[0] != dim):
        raise DimensionMismatchError(dim if dim is not None else arr.shape[0], arr.shape, where)
    asymmetry = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
    bound = tol.sym * max(1.0, float(np.linalg.norm(arr, ord=np.inf)))
    if asymmetry > bound:
        raise AsymmetricWeightError(asymmetry, bound, where)
    if asymmetry > 0:
        logger.warning(f"Symmetrizing weight{' on ' + where if where else ''} (asymmetry {asymmetry:.3e})")
        arr = (arr + arr.T) / 2
    return WeightMatrix(arr)


def _eigenvalues(weight: WeightMatrix) -> np.ndarray:
    return sla.eigvalsh(weight.entries)


def classify_weight(weight, tol: Tolerances = DEFAULT_TOLERANCES, where: str = "") -> SignClass:
    """
    Sign and definiteness of a symmetric weight.

    Raises:
        AsymmetricWeightError: the input is not symmetric within tolerance.
        IndefiniteWeightError: eigenvalues of both strict signs beyond tol_def * ||M||_2.
    """
    if not isinstance(weight, WeightMatrix):
        weight = symmetrize_weight(weight, tol, where)
    eig = _eigenvalues(weight)
    scale = float(np.max(np.abs(eig))) if eig.size else 0.0
    if scale == 0.0:
        return SignClass(0, Definiteness.ZERO)

    threshold = tol.definite * scale
    positive = eig > threshold
    negative = eig < -threshold
    if positive.any() and negative.any():
        raise IndefiniteWeightError(float(eig[0]), float(eig[-1]), where)

    sign = 1 if positive.any() else -1
    zero_count = int(np.count_nonzero(~(positive | negative)))
    definiteness = Definiteness.DEFINITE if zero_count == 0 else Definiteness.SEMIDEFINITE
    return SignClass(sign, definiteness)


def magnitude(weight: WeightMatrix, sign_class: SignClass) -> np.ndarray:
    """|M| = sgn(M) M."""
    return sign_class.sign * weight.entries


def weight_null_basis(weight: WeightMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    """Orthonormal basis of null(M) with the definiteness threshold; null(0) is all of R^d."""
    eig, vecs = sla.eigh(weight.entries)
    scale = float(np.max(np.abs(eig))) if eig.size else 0.0
    if scale == 0.0:
        return SubspaceBasis.full(weight.dim)
    mask = np.abs(eig) <= tol.definite * scale
    return SubspaceBasis(vecs[:, mask])
