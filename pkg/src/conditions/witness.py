"""
Counterexample constructions: null vectors of L that are not of bipartite form, built when the
null-independence or the balancing-edge isolation check fails. A witness is returned only if it
passes the edge-wise null test on the whole graph.
"""
import logging
from typing import Optional

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.graph.builder import edge_null_basis, stack_nulls
from src.models.balance import BalancingSet
from src.models.graph import MatrixWeightedGraph
from src.models.subspace import SubspaceBasis
from src.models.topology import PathDescriptor
from src.spectral.null_space import verify_null_vector
from src.utils.linalg import numerical_null_space

logger = logging.getLogger(__name__)


def _accept(graph: MatrixWeightedGraph, x: np.ndarray, what: str) -> Optional[np.ndarray]:
    if not np.any(np.abs(x) > 0):
        return None
    report = verify_null_vector(graph, x)
    if not report.passes:
        logger.debug(f"{what} candidate rejected on edges {report.failing_edges()}")
        return None
    return x


def condition4_witness(graph: MatrixWeightedGraph, path: PathDescriptor,
                       tol: Tolerances = DEFAULT_TOLERANCES) -> Optional[np.ndarray]:
    """
    Null vector supported on the interior of a path whose edge null bases are dependent.

    With c a null vector of [B_1 .. B_rho], w_i = B_i c_i and u_i = alpha_{i-1} w_i, the states
    x_1 = 0, x_{i+1} = s_i (x_i - u_i) end at x_{rho+1} = 0; every other node stays 0.
    """
    widths = [b.rank for b in path.edge_nulls]
    if sum(widths) == 0:
        return None
    stacked = np.hstack([b.columns for b in path.edge_nulls if b.rank > 0])
    kernel = numerical_null_space(stacked, tol.rank)
    if kernel.shape[1] == 0:
        return None
    c = kernel[:, 0]

    d = graph.dim
    x = np.zeros(graph.n * d)
    state = np.zeros(d)
    alpha_prev, offset = 1, 0
    for k, (edge_sign, b, width) in enumerate(zip(path.edge_signs, path.edge_nulls, widths)):
        w = b.columns @ c[offset:offset + width] if width else np.zeros(d)
        offset += width
        state = edge_sign * (state - alpha_prev * w)
        alpha_prev *= edge_sign
        if k + 1 < path.length:
            i = graph.index[path.nodes[k + 1]]
            x[i * d:(i + 1) * d] = state
    return _accept(graph, x, "Null-independence witness")


def condition5_witness(graph: MatrixWeightedGraph, path: PathDescriptor, nbs: BalancingSet, edge_index: int,
                       b_kl: SubspaceBasis, b_km: SubspaceBasis,
                       tol: Tolerances = DEFAULT_TOLERANCES) -> Optional[np.ndarray]:
    """
    Null vector for a balancing path whose edge `edge_index` shares null directions with the
    endpoint continents.

    Take v in span(B_Kl) cap span(B_Km) cap null(A_i) cap null(E^nb minus the path's balancing
    edge) and place sigma(node) v on every node, except that the path interior between edge i and
    the balancing edge gets -sigma(node) v.
    """
    if len(path.nbs_edges) != 1 or edge_index == path.nbs_edges[0]:
        return None
    n_idx = path.nbs_edges[0]
    nbs_key = path.edges[n_idx].key
    others = stack_nulls([e for e in nbs.edges if e.key != nbs_key], graph.dim, tol)
    candidates = b_kl.intersect(b_km, edge_null_basis(path.edges[edge_index], tol), others, tol=tol.rank)
    if candidates.is_trivial:
        return None
    v = candidates.columns[:, 0]

    lo, hi = sorted((edge_index, n_idx))
    flipped = set(path.nodes[lo + 1:hi + 1])
    d = graph.dim
    x = np.zeros(graph.n * d)
    for node, sigma in zip(graph.node_ids, nbs.gauge.sigma):
        i = graph.index[node]
        x[i * d:(i + 1) * d] = (-sigma if node in flipped else sigma) * v
    return _accept(graph, x, "Balancing-path isolation witness")
