"""
Enumeration of semidefinite paths joining two anchored continents.

A connecting path starts in K_l, ends in K_m and passes only through free nodes; its interior is
therefore disjoint from both endpoint continents and from every third continent.
"""
import logging
from collections import Counter
from typing import AbstractSet, Dict, List, Sequence, Tuple

import networkx as nx

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.analysis import PathBudgetExceededError
from src.graph.builder import edge_null_basis
from src.models.graph import MatrixWeightedGraph
from src.models.subspace import sum_of
from src.models.topology import Continent, ConnectingPaths, PathDescriptor
from src.topology.continents import free_nodes

logger = logging.getLogger(__name__)


def describe_path(graph: MatrixWeightedGraph, nodes: Sequence[str], pair: Tuple[int, int],
                  start: Continent, end: Continent,
                  nbs_keys: AbstractSet[frozenset] = frozenset(),
                  tol: Tolerances = DEFAULT_TOLERANCES) -> PathDescriptor:
    edges = tuple(graph.edge_between(a, b) for a, b in zip(nodes, nodes[1:]))
    sign = 1
    for e in edges:
        sign *= e.sign
    effective = start.tree_signs[nodes[0]] * sign * end.tree_signs[nodes[-1]]
    nulls = tuple(edge_null_basis(e, tol) for e in edges)
    span = sum_of(nulls, graph.dim, tol.rank)
    union_is_span = span.is_trivial or any(b.rank == span.rank for b in nulls)
    if not union_is_span:
        logger.warning(f"Null space of path {'-'.join(nodes)} is a union of {len(nulls)} subspaces, "
                       f"not a subspace; using its span (rank {span.rank})")
    nbs = tuple(k for k, e in enumerate(edges) if e.key in nbs_keys)
    return PathDescriptor(
        pair=pair,
        nodes=tuple(nodes),
        edges=edges,
        sign=sign,
        effective_sign=effective,
        edge_nulls=nulls,
        null_space=span,
        union_is_span=union_is_span,
        nbs_edges=nbs,
    )


def enumerate_connecting_paths(graph: MatrixWeightedGraph, continents: Sequence[Continent], l: int, m: int,
                               cap: int = 10_000, nbs_keys: AbstractSet[frozenset] = frozenset(),
                               tol: Tolerances = DEFAULT_TOLERANCES) -> ConnectingPaths:
    """
    All simple semidefinite paths from continent `l` to continent `m`, in deterministic order.

    Raises:
        PathBudgetExceededError: more than `cap` paths exist for the pair.
    """
    if l == m:
        raise ValueError("a continent pair needs two distinct continents")
    start, end = continents[l], continents[m]
    interior_allowed = set(free_nodes(continents))
    targets = set(end.nodes)
    full = graph.to_networkx()

    found: List[Tuple[str, ...]] = []
    for source in start.nodes:
        allowed = interior_allowed | {source} | targets
        sub = full.subgraph(allowed).copy()
        sub.remove_edges_from([(a, b) for a, b in list(sub.edges) if a in targets and b in targets])
        for path in nx.all_simple_paths(sub, source, targets):
            if any(node in targets for node in path[1:-1]):
                continue
            found.append(tuple(path))
            if len(found) > cap:
                raise PathBudgetExceededError((l, m), cap)

    order: Dict[str, int] = graph.index
    found.sort(key=lambda p: (len(p), [order[n] for n in p]))
    paths = tuple(describe_path(graph, p, (l, m), start, end, nbs_keys, tol) for p in found)

    counts = Counter(node for p in paths for node in p.interior)
    shared = tuple(sorted((n for n, c in counts.items() if c > 1), key=order.__getitem__))
    logger.debug(f"Continent pair ({l}, {m}): {len(paths)} connecting paths, shared interior nodes {list(shared)}")
    return ConnectingPaths((l, m), paths, shared)
