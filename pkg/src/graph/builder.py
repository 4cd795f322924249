"""
Graph construction: document validation, Laplacian assembly, unsigned lifting and gauge transforms.
"""
import logging
from numbers import Integral, Real
from typing import Any, Dict, Iterable, Mapping, Tuple

import networkx as nx
import numpy as np
import scipy.linalg as sla

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.graph import (
    DuplicateEdgeError,
    GraphDocumentError,
    NegativeWeightInUnsignedInputError,
    SelfLoopError,
)
from src.graph.weights import classify_weight, symmetrize_weight, weight_null_basis
from src.models.graph import Edge, GaugeAssignment, Laplacian, MatrixWeightedGraph
from src.models.subspace import SubspaceBasis
from src.models.weight import Definiteness, SignClass
from src.utils.linalg import numerical_null_space

logger = logging.getLogger(__name__)

DOCUMENT_KEYS = ("d", "nodes", "edges")
EDGE_KEYS = ("u", "v", "w")


def _check_keys(obj: Mapping, allowed: Tuple[str, ...], what: str) -> None:
    if not isinstance(obj, Mapping):
        raise GraphDocumentError(f"{what} must be an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise GraphDocumentError(f"unknown keys in {what}: {unknown}")
    missing = [k for k in allowed if k not in obj]
    if missing:
        raise GraphDocumentError(f"missing keys in {what}: {missing}")


def _parse_dim(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < 1:
        raise GraphDocumentError(f"'d' must be a positive integer, got {value!r}")
    return int(value)


def _parse_nodes(value: Any) -> Tuple[str, ...]:
    if not isinstance(value, list) or not value:
        raise GraphDocumentError("'nodes' must be a non-empty array of string ids")
    for node in value:
        if not isinstance(node, str):
            raise GraphDocumentError(f"node ids must be strings, got {node!r}")
    if len(set(value)) != len(value):
        duplicates = sorted({n for n in value if value.count(n) > 1})
        raise GraphDocumentError(f"duplicate node ids: {duplicates}")
    return tuple(value)


def _parse_entries(value: Any, where: str) -> np.ndarray:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise GraphDocumentError(f"weight on {where} must be a row-major array of arrays")
    for row in value:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, Real):
                raise GraphDocumentError(f"weight on {where} has a non-numeric entry {x!r}")
    try:
        arr = np.array(value, dtype=float)
    except ValueError as e:
        raise GraphDocumentError(f"weight on {where} is ragged: {e}") from e
    if not np.all(np.isfinite(arr)):
        raise GraphDocumentError(f"weight on {where} has non-finite entries")
    return arr


def validate_graph(document: Mapping[str, Any], tol: Tolerances = DEFAULT_TOLERANCES) -> MatrixWeightedGraph:
    """
    Validate a parsed graph document and build the signed graph.

    The document has exactly the keys `d`, `nodes` and `edges`; every edge has exactly `u`, `v`
    and `w` (row-major d x d). Zero weights mean "no edge" and are dropped with a warning.

    Raises:
        GraphDocumentError: malformed structure, unknown keys or unknown node ids.
        SelfLoopError, DuplicateEdgeError, DimensionMismatchError: structural violations.
        AsymmetricWeightError, IndefiniteWeightError: weights outside the sign calculus.
    """
    _check_keys(document, DOCUMENT_KEYS, "graph document")
    d = _parse_dim(document["d"])
    node_ids = _parse_nodes(document["nodes"])
    known = set(node_ids)

    raw_edges = document["edges"]
    if not isinstance(raw_edges, list):
        raise GraphDocumentError("'edges' must be an array")

    edges = []
    seen = set()
    for k, raw in enumerate(raw_edges):
        _check_keys(raw, EDGE_KEYS, f"edge #{k}")
        u, v = raw["u"], raw["v"]
        for node in (u, v):
            if not isinstance(node, str) or node not in known:
                raise GraphDocumentError(f"edge #{k} references unknown node {node!r}")
        if u == v:
            raise SelfLoopError(u)
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateEdgeError(u, v)
        seen.add(key)

        where = f"edge ({u}, {v})"
        weight = symmetrize_weight(_parse_entries(raw["w"], where), tol, where, dim=d)
        sign_class = classify_weight(weight, tol, where)
        if sign_class.definiteness is Definiteness.ZERO:
            logger.warning(f"Dropping zero weight on {where}")
            continue
        edges.append(Edge(u, v, weight, sign_class))

    g = nx.Graph()
    g.add_nodes_from(node_ids)
    g.add_edges_from((e.u, e.v) for e in edges)
    connected = nx.is_connected(g)
    if not connected:
        logger.warning(f"Graph with {len(node_ids)} nodes has {nx.number_connected_components(g)} components")

    graph = MatrixWeightedGraph(node_ids, d, tuple(edges), connected)
    logger.debug(f"Validated graph: N={graph.n}, d={d}, edges={len(edges)}, connected={connected}")
    return graph


def to_document(graph: MatrixWeightedGraph) -> Dict[str, Any]:
    """Inverse of `validate_graph`: the JSON-shaped document of a graph."""
    return {
        "d": graph.dim,
        "nodes": list(graph.node_ids),
        "edges": [{"u": e.u, "v": e.v, "w": e.weight.entries.tolist()} for e in graph.edges],
    }


def build_laplacian(graph: MatrixWeightedGraph) -> Laplacian:
    """L = C - A with C_i = sum_j |A_ij| and off-diagonal blocks -A_ij."""
    n, d = graph.n, graph.dim
    blocks = np.zeros((n * d, n * d))
    for e in graph.edges:
        i, j = graph.index[e.u], graph.index[e.v]
        si, sj = slice(i * d, (i + 1) * d), slice(j * d, (j + 1) * d)
        mag = e.magnitude
        blocks[si, si] += mag
        blocks[sj, sj] += mag
        blocks[si, sj] -= e.weight.entries
        blocks[sj, si] -= e.weight.entries
    return Laplacian(blocks, n, d)


def incidence_factorization(graph: MatrixWeightedGraph) -> Tuple[np.ndarray, np.ndarray]:
    """
    Signed incidence H (row block k: I at u, -sgn(A_k) I at v) and W = blkdiag{|A_k|}.

    L = H^T W H.
    """
    n, d, m = graph.n, graph.dim, len(graph.edges)
    h = np.zeros((m * d, n * d))
    for k, e in enumerate(graph.edges):
        i, j = graph.index[e.u], graph.index[e.v]
        h[k * d:(k + 1) * d, i * d:(i + 1) * d] = np.eye(d)
        h[k * d:(k + 1) * d, j * d:(j + 1) * d] = -e.sign * np.eye(d)
    w = sla.block_diag(*[e.magnitude for e in graph.edges]) if m else np.zeros((0, 0))
    return h, w


def lift_unsigned(unsigned, tol: Tolerances = DEFAULT_TOLERANCES) -> MatrixWeightedGraph:
    """
    Place an unsigned matrix-weighted network (document or graph) in the signed container.

    Raises:
        NegativeWeightInUnsignedInputError: some weight is negative (semi)definite.
    """
    graph = unsigned if isinstance(unsigned, MatrixWeightedGraph) else validate_graph(unsigned, tol)
    for e in graph.edges:
        if e.sign < 0:
            raise NegativeWeightInUnsignedInputError(e.u, e.v)
    return graph


def gauge_transform(graph: MatrixWeightedGraph, gauge: GaugeAssignment) -> MatrixWeightedGraph:
    """Switch the graph: A_ij -> sigma_i sigma_j A_ij."""
    if len(gauge) != graph.n:
        raise ValueError(f"gauge has {len(gauge)} signs for {graph.n} nodes")
    edges = []
    for e in graph.edges:
        flip = gauge.sigma[graph.index[e.u]] * gauge.sigma[graph.index[e.v]]
        sign_class = SignClass(e.sign * flip, e.sign_class.definiteness)
        edges.append(Edge(e.u, e.v, e.weight.scaled(flip), sign_class))
    return MatrixWeightedGraph(graph.node_ids, graph.dim, tuple(edges), graph.connected)


def edge_null_basis(edge: Edge, tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    """B_A of an edge: orthonormal basis of null(A)."""
    return weight_null_basis(edge.weight, tol)


def stack_nulls(edges: Iterable[Edge], d: int, tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    """Common null space of a set of edge weights (R^d for the empty set)."""
    edges = list(edges)
    if not edges:
        return SubspaceBasis.full(d)
    stacked = np.vstack([e.weight.entries for e in edges])
    return SubspaceBasis(numerical_null_space(stacked, tol.rank, n_cols=d))
