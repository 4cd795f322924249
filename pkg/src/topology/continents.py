"""
Continents: connected components of the definite-edge subgraph, each with a breadth-first spanning
tree in document order and the internal gauge it induces.
"""
import logging
from typing import Dict, List, Sequence, Set

import networkx as nx

from src.exception.analysis import GaugeConflictError
from src.models.graph import MatrixWeightedGraph
from src.models.topology import Continent

logger = logging.getLogger(__name__)


def detect_continents(graph: MatrixWeightedGraph) -> List[Continent]:
    """
    Continents in order of their root (the first node of each component in document order).

    Every continent carries all edges it induces, including semidefinite ones. Singleton continents
    are free when their component among singletons touches two or more multi-node continents; those
    nodes may only occur inside bridging paths. Every other continent is anchored.
    """
    definite = graph.to_networkx(definite_only=True)
    visited = set()
    raw = []
    for root in graph.node_ids:
        if root in visited:
            continue
        tree_pairs = list(nx.bfs_edges(definite, root))
        members = {root} | {v for _, v in tree_pairs}
        visited |= members
        raw.append((root, tree_pairs, members))

    continents = []
    free = _bridge_interiors(graph, raw)
    for index, (root, tree_pairs, members) in enumerate(raw):
        nodes = tuple(sorted(members, key=graph.index.__getitem__))
        tree_edges = tuple(graph.edge_between(u, v) for u, v in tree_pairs)
        edges = tuple(e for e in graph.edges if e.u in members and e.v in members)

        signs: Dict[str, int] = {root: 1}
        for u, v in tree_pairs:
            signs[v] = signs[u] * graph.edge_between(u, v).sign

        conflict = None
        tree_keys = {e.key for e in tree_edges}
        for e in edges:
            if e.is_definite and e.key not in tree_keys and e.sign != signs[e.u] * signs[e.v]:
                conflict = _tree_cycle(tree_pairs, e.u, e.v)
                logger.debug(f"Continent {index} has a negative definite cycle through {e}")
                break

        continents.append(Continent(
            index=index,
            nodes=nodes,
            root=root,
            tree_edges=tree_edges,
            edges=edges,
            tree_signs=signs,
            conflict_cycle=conflict,
            anchored=root not in free,
        ))

    logger.debug(f"Detected {len(continents)} continents "
                 f"({sum(c.anchored for c in continents)} anchored)")
    return continents


def _bridge_interiors(graph: MatrixWeightedGraph, raw) -> Set[str]:
    singles = {root for root, _, members in raw if len(members) == 1}
    owner = {n: i for i, (_, _, members) in enumerate(raw) if len(members) > 1 for n in members}
    full = graph.to_networkx()
    free: Set[str] = set()
    for component in nx.connected_components(full.subgraph(singles)):
        touched = {owner[v] for u in component for v in full.neighbors(u) if v in owner}
        if len(touched) >= 2:
            free |= component
    return free


def _tree_cycle(tree_pairs, u: str, v: str) -> tuple:
    tree = nx.Graph()
    tree.add_edges_from(tree_pairs)
    path = nx.shortest_path(tree, u, v)
    return tuple(path) + (u,)


def continent_gauge(continent: Continent) -> Dict[str, int]:
    """
    Per-node signs relative to the continent root: the product of tree-edge signs.

    Raises:
        GaugeConflictError: a definite non-tree edge contradicts the tree gauge, which rules out a
            nontrivial balancing set on this continent.
    """
    if continent.conflict_cycle is not None:
        raise GaugeConflictError(continent.conflict_cycle)
    return dict(continent.tree_signs)


def anchored_continents(continents: Sequence[Continent]) -> List[Continent]:
    return [c for c in continents if c.anchored]


def free_nodes(continents: Sequence[Continent]) -> List[str]:
    return [c.root for c in continents if not c.anchored]


def continent_of(continents: Sequence[Continent]) -> Dict[str, int]:
    return {node: c.index for c in continents for node in c.nodes}


def continent_subgraph(graph: MatrixWeightedGraph, continent: Continent) -> MatrixWeightedGraph:
    """The continent as a graph of its own (node order follows the parent graph)."""
    return MatrixWeightedGraph(continent.nodes, graph.dim, continent.edges, True)
