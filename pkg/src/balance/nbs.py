"""
Structural balance and nontrivial balancing sets (NBS).

A canonical partition qualifies when the edges it leaves inconsistent share a nonzero common null
space (the balanced case, with no inconsistent edge, qualifies with null space R^d). Inside a
continent any qualifying partition follows the continent gauge, so the search runs over sign
assignments of whole continents only.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.analysis import FactorizationMismatchError, SearchBudgetExceededError
from src.graph.builder import stack_nulls
from src.models.balance import BalancingSet, NBSEnumeration, Partition
from src.models.graph import Edge, GaugeAssignment, MatrixWeightedGraph
from src.models.subspace import SubspaceBasis, intersection_of
from src.models.topology import Continent
from src.topology.continents import detect_continents

logger = logging.getLogger(__name__)


def partition_from_gauge(node_ids: Sequence[str], sigma: Sequence[int]) -> Partition:
    """Canonical partition: nodes sharing the first node's sign form V1."""
    ref = sigma[0]
    v1 = tuple(n for n, s in zip(node_ids, sigma) if s == ref)
    v2 = tuple(n for n, s in zip(node_ids, sigma) if s != ref)
    return Partition(v1, v2)


def gauge_from_partition(partition: Partition, node_ids: Sequence[str]) -> GaugeAssignment:
    """sigma = +1 on V1 and -1 on V2."""
    return GaugeAssignment(tuple(partition.side(n) for n in node_ids), tuple(node_ids))


def _sigma_of(graph: MatrixWeightedGraph, partition: Partition) -> Dict[str, int]:
    if not partition.covers(graph.node_ids):
        raise ValueError("partition does not cover the node set")
    return {n: partition.side(n) for n in graph.node_ids}


def inconsistent_edges(graph: MatrixWeightedGraph, partition: Partition) -> Tuple[Edge, ...]:
    """Negative edges inside a set and positive edges across the sets."""
    sigma = _sigma_of(graph, partition)
    return tuple(e for e in graph.edges if e.sign != sigma[e.u] * sigma[e.v])


def _inconsistent_under(edges: Sequence[Edge], sigma: Dict[str, int]) -> Tuple[Edge, ...]:
    return tuple(e for e in edges if e.sign != sigma[e.u] * sigma[e.v])


def enumerate_nbs(graph: MatrixWeightedGraph, continents: Optional[Sequence[Continent]] = None,
                  tol: Tolerances = DEFAULT_TOLERANCES, cap: int = 1 << 20) -> NBSEnumeration:
    """
    Enumerate all nontrivial balancing sets.

    Continent 0 (which holds the first node) keeps sign +1; the remaining continents take every
    sign assignment in lexicographic order with + before -.

    Raises:
        SearchBudgetExceededError: 2^(#continents - 1) exceeds `cap`.
    """
    if continents is None:
        continents = detect_continents(graph)
    k = len(continents)
    candidates = 1 << (k - 1)
    if candidates > cap:
        raise SearchBudgetExceededError(candidates, cap)

    unit_of = {node: c.index for c in continents for node in c.nodes}
    found: List[BalancingSet] = []
    for tail in itertools.product((1, -1), repeat=k - 1):
        unit_sign = (1,) + tail
        sigma = {n: unit_sign[unit_of[n]] * continents[unit_of[n]].tree_signs[n] for n in graph.node_ids}
        edges = _inconsistent_under(graph.edges, sigma)
        if any(e.is_definite for e in edges):
            continue
        null = stack_nulls(edges, graph.dim, tol)
        if null.is_trivial:
            continue
        ordered = tuple(sigma[n] for n in graph.node_ids)
        partition = partition_from_gauge(graph.node_ids, ordered)
        found.append(BalancingSet(partition, edges, null, gauge_from_partition(partition, graph.node_ids)))

    logger.debug(f"Balancing-set search: {candidates} candidates, {len(found)} nontrivial")
    return NBSEnumeration(tuple(found), candidates)


def continent_null_basis(continent: Continent, d: int, tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    """
    B_K: common null space of the continent's own balancing set under its tree gauge.

    A continent whose definite cycle contradicts the gauge gets {0}.
    """
    if continent.has_conflict:
        return SubspaceBasis.zero(d)
    return stack_nulls(_inconsistent_under(continent.edges, continent.tree_signs), d, tol)


def nbs_null_basis(graph: MatrixWeightedGraph, nbs: BalancingSet, continents: Sequence[Continent],
                   tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    """
    null(E^nb) computed directly and through the continent factorization
    (cap_i span(B_K_i)) cap (cap of nulls over balancing edges outside every continent).

    Raises:
        FactorizationMismatchError: the two computations disagree.
    """
    d = graph.dim
    direct = stack_nulls(nbs.edges, d, tol)

    inside = set()
    for c in continents:
        inside |= {e.key for e in c.edges}
    outside = [e for e in nbs.edges if e.key not in inside]
    factorized = intersection_of(
        [continent_null_basis(c, d, tol) for c in continents] + ([stack_nulls(outside, d, tol)] if outside else []),
        d,
        tol.rank,
    )
    if not direct.same_as(factorized, tol.angle):
        raise FactorizationMismatchError(direct.rank, factorized.rank, direct.angle_to(factorized))
    return direct
