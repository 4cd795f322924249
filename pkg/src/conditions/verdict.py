"""
Full analysis of one graph: continents, balancing sets, connecting paths and the five conditions,
combined into verdicts for the disjoint-path, primary-path and edge-bridge criteria.
"""
import itertools
import logging
from typing import Dict, List, Optional

import numpy as np

from src.balance.nbs import continent_null_basis, enumerate_nbs, nbs_null_basis
from src.conditions.path_checks import (
    check_nbs_path_condition,
    check_null_independence,
    endpoint_intersection,
    group_and_check_eq4,
)
from src.conditions.witness import condition4_witness, condition5_witness
from src.config import AnalysisConfig
from src.exception.analysis import MultipleNBSEdgesOnPathError
from src.graph.builder import edge_null_basis
from src.models.conditions import (
    Condition,
    ConditionReport,
    Criterion,
    CriterionVerdict,
    PairReport,
    PathChecks,
    Prediction,
    Status,
)
from src.models.graph import MatrixWeightedGraph
from src.models.subspace import SolutionClass, SolutionKind
from src.topology.continents import anchored_continents, detect_continents, free_nodes
from src.topology.paths import enumerate_connecting_paths

logger = logging.getLogger(__name__)


def _failed(flags: Dict[Condition, bool]) -> List[Condition]:
    return [c for c in Condition if c in flags and not flags[c]]


def _verdict(criterion: Criterion, applies: bool, flags: Dict[Condition, bool],
             necessary_and_sufficient: bool = False, note: str = "") -> CriterionVerdict:
    if not applies:
        return CriterionVerdict(criterion, Status.NOT_APPLICABLE, note=note)
    failed = _failed(flags)
    status = Status.FAILS if failed else Status.HOLDS
    return CriterionVerdict(criterion, status, failed, necessary_and_sufficient, note)


def full_verdict(graph: MatrixWeightedGraph, config: Optional[AnalysisConfig] = None) -> ConditionReport:
    """
    Run continents -> balancing sets -> paths -> conditions and derive the prediction.

    When several balancing sets exist, path membership of balancing edges refers to the one with
    the fewest edges, so the remaining conditions are still reported.
    """
    config = config or AnalysisConfig()
    tol = config.tolerances
    d = graph.dim

    continents = detect_continents(graph)
    free = free_nodes(continents)
    anchored = anchored_continents(continents)
    enumeration = enumerate_nbs(graph, continents, tol, config.partition_cap)
    reference = enumeration.reference()
    nbs_keys = reference.edge_keys if reference is not None else frozenset()
    nbs_null = nbs_null_basis(graph, reference, continents, tol) if reference is not None else None
    b_k = {c.index: continent_null_basis(c, d, tol) for c in continents}

    witnesses: Dict[Condition, np.ndarray] = {}
    pairs: List[PairReport] = []
    for left, right in itertools.combinations([c.index for c in anchored], 2):
        connecting = enumerate_connecting_paths(graph, continents, left, right, config.path_cap, nbs_keys, tol)
        groups = group_and_check_eq4(connecting.paths, b_k[left], b_k[right], tol, pair=(left, right))
        checks = []
        for path in connecting.paths:
            check = PathChecks(path, check_null_independence(path, tol))
            if not check.null_independent and Condition.NULL_INDEPENDENCE not in witnesses:
                found = condition4_witness(graph, path, tol)
                if found is not None:
                    witnesses[Condition.NULL_INDEPENDENCE] = found
            try:
                if path.nbs_edges:
                    check.isolated = check_nbs_path_condition(path, b_k[left], b_k[right], tol)
            except MultipleNBSEdgesOnPathError as e:
                check.isolated = False
                check.isolation_note = e.message
            if check.isolated is False and reference is not None \
                    and Condition.NBS_PATH_ISOLATION not in witnesses and len(path.nbs_edges) == 1:
                found = _isolation_witness(graph, path, reference, b_k[left], b_k[right], tol)
                if found is not None:
                    witnesses[Condition.NBS_PATH_ISOLATION] = found
            checks.append(check)
        pairs.append(PairReport((left, right), connecting, groups, checks))

    # coverage of bridge structure by connecting paths
    inside = {e.key for c in continents for e in c.edges}
    bridge_edges = [e for e in graph.edges if e.key not in inside]
    all_checks = [ch for p in pairs for ch in p.checks]
    primary_checks = [ch for ch in all_checks if ch.path.primary]

    def uncovered(checks) -> Dict[str, list]:
        edges_on = {e.key for ch in checks for e in ch.path.edges}
        nodes_on = {n for ch in checks for n in ch.path.interior}
        return {
            "edges": [(e.u, e.v) for e in bridge_edges if e.key not in edges_on],
            "free_nodes": [n for n in free if n not in nodes_on],
        }

    uncovered_all = uncovered(all_checks)
    uncovered_primary = uncovered(primary_checks)

    unique = enumeration.unique
    balance = all(p.groups.holds for p in pairs)
    disjoint = all(p.connecting.node_independent for p in pairs) \
        and not uncovered_all["edges"] and not uncovered_all["free_nodes"]
    conditions = {
        Condition.UNIQUE_NBS: unique,
        Condition.PATH_BALANCE: balance,
        Condition.TOPOLOGY: disjoint,
        Condition.NULL_INDEPENDENCE: all(ch.null_independent for ch in all_checks),
        Condition.NBS_PATH_ISOLATION: all(ch.isolated is not False for ch in all_checks),
    }
    primary_flags = {
        Condition.UNIQUE_NBS: unique,
        Condition.PATH_BALANCE: balance,
        Condition.TOPOLOGY: not uncovered_primary["edges"] and not uncovered_primary["free_nodes"],
        Condition.NULL_INDEPENDENCE: all(ch.null_independent for ch in primary_checks),
        Condition.NBS_PATH_ISOLATION: all(ch.isolated is not False for ch in primary_checks),
    }
    edge_flags = {c: ok for c, ok in conditions.items() if c is not Condition.TOPOLOGY}

    connected = graph.connected
    disconnected_note = "" if connected else "disconnected graph: bipartite consensus is impossible"
    edge_bridges_apply = connected and not free
    verdicts = {
        Criterion.DISJOINT_PATHS: _verdict(Criterion.DISJOINT_PATHS, connected, conditions, note=disconnected_note),
        Criterion.PRIMARY_PATHS: _verdict(Criterion.PRIMARY_PATHS, connected, primary_flags, note=disconnected_note),
        Criterion.EDGE_BRIDGES: _verdict(
            Criterion.EDGE_BRIDGES, edge_bridges_apply, edge_flags, necessary_and_sufficient=edge_bridges_apply,
            note=disconnected_note if not connected else ("" if edge_bridges_apply else "bridges pass through free nodes"),
        ),
    }

    prediction = _predict(connected, enumeration, verdicts, conditions, witnesses, continents, b_k)
    predicted_class = None
    if prediction in (Prediction.CONSENSUS, Prediction.BIPARTITE):
        kind = SolutionKind.CONSENSUS if prediction is Prediction.CONSENSUS else SolutionKind.BIPARTITE
        predicted_class = SolutionClass(kind, nbs_null.rank, reference.gauge, nbs_null)
    elif prediction is Prediction.TRIVIAL:
        predicted_class = SolutionClass(SolutionKind.TRIVIAL, 0)

    report = ConditionReport(
        connected=connected,
        continents=continents,
        free_nodes=free,
        nbs=enumeration,
        reference_nbs=reference,
        nbs_null=nbs_null,
        continent_nulls=b_k,
        pairs=pairs,
        conditions=conditions,
        uncovered=uncovered_all,
        verdicts=verdicts,
        prediction=prediction,
        predicted_class=predicted_class,
        witnesses=witnesses,
    )
    logger.info(f"Verdict: {prediction.value}; failing conditions {report.failing()}; "
                f"{', '.join(f'{c.name}={v.status.value}' for c, v in verdicts.items())}")
    return report


def _isolation_witness(graph, path, reference, b_kl, b_km, tol) -> Optional[np.ndarray]:
    endpoint = endpoint_intersection(b_kl, b_km, tol)
    for k, edge in enumerate(path.edges):
        if k in path.nbs_edges:
            continue
        if edge_null_basis(edge, tol).intersect(endpoint, tol=tol.rank).is_trivial:
            continue
        found = condition5_witness(graph, path, reference, k, b_kl, b_km, tol)
        if found is not None:
            return found
    return None


def _predict(connected, enumeration, verdicts, conditions, witnesses, continents, b_k) -> Prediction:
    if not connected:
        return Prediction.NOT_BIPARTITE
    if not enumeration.exists:
        all_pinned = all(c.anchored and b_k[c.index].is_trivial for c in continents)
        return Prediction.TRIVIAL if all_pinned else Prediction.NOT_BIPARTITE
    if not enumeration.unique:
        return Prediction.NOT_BIPARTITE

    bipartite = (Prediction.CONSENSUS if enumeration.sets[0].partition.is_trivial else Prediction.BIPARTITE)
    edge = verdicts[Criterion.EDGE_BRIDGES]
    if edge.status is not Status.NOT_APPLICABLE:
        return bipartite if edge.status is Status.HOLDS else Prediction.NOT_BIPARTITE
    if verdicts[Criterion.DISJOINT_PATHS].status is Status.HOLDS \
            or verdicts[Criterion.PRIMARY_PATHS].status is Status.HOLDS:
        return bipartite
    if not conditions[Condition.PATH_BALANCE] or witnesses:
        return Prediction.NOT_BIPARTITE
    return Prediction.INCONCLUSIVE
