"""
Classification of null(L).

null(L) is of bipartite form when it equals span(D (1_N (x) Psi)) for a gauge D and an orthonormal
Psi with at most d columns; D = I gives consensus. Any other nonzero null space is a cluster.
"""
import logging

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.models.graph import GaugeAssignment
from src.models.subspace import SolutionClass, SolutionKind, SubspaceBasis
from src.utils.linalg import orthonormal_range

logger = logging.getLogger(__name__)


def bipartite_subspace(gauge: GaugeAssignment, psi: SubspaceBasis) -> SubspaceBasis:
    """Orthonormal basis of span(D (1_N (x) Psi))."""
    n = len(gauge)
    sigma = np.asarray(gauge.sigma, dtype=float).reshape(-1, 1)
    return SubspaceBasis(np.kron(sigma, psi.columns) / np.sqrt(n))


def classify_solution_space(basis: SubspaceBasis, n: int, d: int,
                            tol: Tolerances = DEFAULT_TOLERANCES,
                            node_ids=()) -> SolutionClass:
    """
    Decide Consensus / BipartiteConsensus / Cluster / Trivial for the null space spanned by `basis`.

    Node blocks Z_i of the basis must all be +/- Z_1 with Z_1 != 0; the signs give the gauge and
    the range of Z_1 gives Psi. The candidate span(D (1 (x) Psi)) is then compared with the basis
    by principal angles.
    """
    r = basis.rank
    if r == 0:
        return SolutionClass(SolutionKind.TRIVIAL, 0)
    node_ids = tuple(node_ids) or tuple(str(i + 1) for i in range(n))
    z = basis.columns
    if r > d:
        return SolutionClass(SolutionKind.CLUSTER, r)

    blocks = [z[i * d:(i + 1) * d, :] for i in range(n)]
    ref = blocks[0]
    ref_norm = float(np.linalg.norm(ref))
    if ref_norm <= tol.angle:
        return SolutionClass(SolutionKind.CLUSTER, r)

    sigma = []
    for block in blocks:
        if float(np.linalg.norm(block)) <= tol.angle:
            return SolutionClass(SolutionKind.CLUSTER, r)
        overlap = float(np.sum(ref * block))
        sigma.append(1 if overlap >= 0 else -1)

    psi = SubspaceBasis(orthonormal_range(ref, tol.rank, n_rows=d))
    if psi.rank != r:
        return SolutionClass(SolutionKind.CLUSTER, r)

    gauge = GaugeAssignment(tuple(sigma), node_ids)
    candidate = bipartite_subspace(gauge, psi)
    if not candidate.same_as(basis, tol.angle):
        logger.debug(f"Null space of rank {r} is not of gauge form (angle {candidate.angle_to(basis):.3e})")
        return SolutionClass(SolutionKind.CLUSTER, r)

    kind = SolutionKind.CONSENSUS if gauge.is_identity else SolutionKind.BIPARTITE
    return SolutionClass(kind, r, gauge, psi)
