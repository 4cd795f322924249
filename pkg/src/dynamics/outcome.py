"""Classification of the terminal state of a trajectory."""
import logging
from typing import List, Optional, Sequence

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.dynamics import NotSettledError
from src.models.graph import Laplacian
from src.models.subspace import SolutionKind, SpectralDecomposition
from src.models.trajectory import OutcomeLabel, Trajectory
from src.spectral.null_space import decompose
from src.utils.linalg import inf_norm

logger = logging.getLogger(__name__)


def suggested_horizon(decomposition: SpectralDecomposition, horizon: float) -> float:
    lam = decomposition.smallest_nonzero
    base = 10.0 / lam if lam else 1.0
    return max(base, 2.0 * horizon)


def classify_outcome(trajectory: Trajectory, laplacian: Laplacian, node_ids: Sequence[str] = (),
                     decomposition: Optional[SpectralDecomposition] = None,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> OutcomeLabel:
    """
    Trivial, Consensus, Bipartite (signs relative to the first node) or Cluster.

    Raises:
        NotSettledError: ||L x(T)||_inf > 1e-8 ||L||_inf ||x0||_inf.
    """
    n, d = laplacian.n, laplacian.d
    node_ids = tuple(node_ids) or tuple(str(i + 1) for i in range(n))
    x0, xt = trajectory.initial, trajectory.terminal
    residual = inf_norm(laplacian.blocks @ xt)
    settle = 1e-8 * laplacian.norm_inf * inf_norm(x0)
    if residual > settle:
        decomposition = decomposition or decompose(laplacian, tol)
        raise NotSettledError(residual, settle, suggested_horizon(decomposition, trajectory.horizon))

    tol_zero = 1e-7 * inf_norm(x0)
    tol_agree = 1e-6 * inf_norm(xt)
    if inf_norm(xt) <= tol_zero:
        return OutcomeLabel(SolutionKind.TRIVIAL, residual, tol_agree, tol_zero)

    blocks = [xt[i * d:(i + 1) * d] for i in range(n)]
    ref = blocks[0]
    signs: Optional[List[int]] = []
    if inf_norm(ref) <= tol_agree:
        signs = None
    else:
        for block in blocks:
            if inf_norm(block - ref) <= tol_agree:
                signs.append(1)
            elif inf_norm(block + ref) <= tol_agree:
                signs.append(-1)
            else:
                signs = None
                break

    if signs is not None:
        kind = SolutionKind.CONSENSUS if all(s == 1 for s in signs) else SolutionKind.BIPARTITE
        return OutcomeLabel(kind, residual, tol_agree, tol_zero, signs=tuple(signs))

    groups: List[List[int]] = []
    for i, block in enumerate(blocks):
        for group in groups:
            if inf_norm(block - blocks[group[0]]) <= tol_agree:
                group.append(i)
                break
        else:
            groups.append([i])
    named = tuple(tuple(node_ids[i] for i in group) for group in groups)
    logger.debug(f"Cluster outcome with {len(named)} groups")
    return OutcomeLabel(SolutionKind.CLUSTER, residual, tol_agree, tol_zero, groups=named)
