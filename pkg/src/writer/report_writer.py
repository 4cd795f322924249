"""
Serialization of analysis reports, simulation outcomes, generator expectations and graph documents.

Key order is fixed by construction and floats use Python's shortest round-trip representation, so
rerunning a command on the same input reproduces the same bytes.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import numpy as np

from src.graph.builder import to_document
from src.models.conditions import Condition, ConditionReport, Criterion, PairReport
from src.models.graph import MatrixWeightedGraph
from src.models.recipe import SynthesizedInstance
from src.models.subspace import SolutionClass, SubspaceBasis
from src.models.trajectory import OutcomeLabel, Trajectory

logger = logging.getLogger(__name__)

CONDITION_KEYS = {
    Condition.UNIQUE_NBS: "unique_nbs",
    Condition.PATH_BALANCE: "path_balance",
    Condition.TOPOLOGY: "topology",
    Condition.NULL_INDEPENDENCE: "null_independence",
    Condition.NBS_PATH_ISOLATION: "nbs_path_isolation",
}


def flat(values) -> List[float]:
    return [float(v) for v in np.asarray(values, dtype=float).ravel()]


def _basis(basis: Optional[SubspaceBasis]) -> Optional[Dict[str, Any]]:
    if basis is None:
        return None
    return {"dim": basis.rank, "columns": [flat(col) for col in basis.columns.T]}


def solution_class_to_dict(solution: Optional[SolutionClass]) -> Optional[Dict[str, Any]]:
    if solution is None:
        return None
    return {
        "class": solution.kind.value,
        "null_dim": solution.null_dim,
        "sigma": list(solution.gauge.sigma) if solution.gauge is not None else None,
        "psi": _basis(solution.psi),
    }


def _pair_to_dict(pair: PairReport) -> Dict[str, Any]:
    groups = pair.groups
    paths = []
    for check in pair.checks:
        path = check.path
        paths.append({
            "nodes": list(path.nodes),
            "sign": path.sign,
            "effective_sign": path.effective_sign,
            "group": "I" if path.effective_sign > 0 else "II",
            "null_dim": path.null_space.rank,
            "edge_null_dims": [b.rank for b in path.edge_nulls],
            "union_is_span": path.union_is_span,
            "nbs_edges": list(path.nbs_edges),
            "primary": path.primary,
            "null_independent": check.null_independent,
            "isolated": check.isolated,
            "isolation_note": check.isolation_note,
        })
    return {
        "pair": list(pair.pair),
        "paths": paths,
        "group_i": len(groups.group_i),
        "group_ii": len(groups.group_ii),
        "S_I_dim": groups.s_i.rank,
        "S_II_dim": groups.s_ii.rank,
        "relation": groups.relation,
        "shared_interior_nodes": list(pair.connecting.shared_interior_nodes),
        "conditions": {
            "path_balance": groups.holds,
            "topology": pair.connecting.node_independent,
            "null_independence": all(c.null_independent for c in pair.checks),
            "nbs_path_isolation": all(c.isolated is not False for c in pair.checks),
        },
    }


def report_to_dict(report: ConditionReport, graph: MatrixWeightedGraph,
                   config: Optional[Mapping[str, Any]] = None, source: Optional[str] = None) -> Dict[str, Any]:
    reference = report.reference_nbs
    nbs_sets = []
    for s in report.nbs.sets:
        nbs_sets.append({
            "v1": list(s.partition.v1),
            "v2": list(s.partition.v2),
            "edges": [[e.u, e.v] for e in s.edges],
            "null_dim": s.null_basis.rank,
        })
    out: Dict[str, Any] = {}
    if source is not None:
        out["source"] = source
    out.update({criterion.value: report.verdict(criterion).value for criterion in Criterion})
    out["verdict_details"] = {
        criterion.value: {
            "status": v.status.value,
            "failed_conditions": [c.value for c in v.failed_conditions],
            "necessary_and_sufficient": v.necessary_and_sufficient,
            "note": v.note,
        }
        for criterion, v in report.verdicts.items()
    }
    out["graph"] = {"nodes": graph.n, "d": graph.dim, "edges": len(graph.edges)}
    out["connected"] = report.connected
    out["predicted"] = report.prediction.value
    out["predicted_class"] = solution_class_to_dict(report.predicted_class)
    out["conditions"] = {CONDITION_KEYS[c]: ok for c, ok in report.conditions.items()}
    out["failing_conditions"] = report.failing()
    out["nbs"] = {
        "count": len(report.nbs),
        "unique": report.nbs.unique,
        "candidates": report.nbs.candidates,
        "reference": report.nbs.sets.index(reference) if reference is not None else None,
        "sets": nbs_sets,
        "null": _basis(report.nbs_null),
    }
    out["continents"] = [
        {
            "index": c.index,
            "nodes": list(c.nodes),
            "root": c.root,
            "anchored": c.anchored,
            "conflict_cycle": list(c.conflict_cycle) if c.conflict_cycle else None,
            "null_dim": report.continent_nulls[c.index].rank,
        }
        for c in report.continents
    ]
    out["free_nodes"] = list(report.free_nodes)
    out["uncovered"] = {k: [list(x) if isinstance(x, tuple) else x for x in v] for k, v in report.uncovered.items()}
    out["pairs"] = [_pair_to_dict(p) for p in report.pairs]
    out["witnesses"] = {CONDITION_KEYS[c]: flat(w) for c, w in sorted(report.witnesses.items(), key=lambda i: i[0].value)}
    if config is not None:
        out["config"] = dict(config)
    return out


def render_human(report: ConditionReport, source: str = "") -> str:
    """Plain-text rendering of a report for terminals."""
    lines = [f"Analysis of {source}" if source else "Analysis"]
    lines.append(f"  connected: {'yes' if report.connected else 'no'}")
    lines.append(f"  continents: {len(report.continents)} "
                 f"({sum(c.anchored for c in report.continents)} anchored), free nodes: {len(report.free_nodes)}")
    lines.append(f"  balancing sets: {len(report.nbs)}"
                 + (f", reference null dim {report.nbs_null.rank}" if report.nbs_null is not None else ""))
    for criterion in Criterion:
        v = report.verdicts[criterion]
        extra = f" (fails {', '.join(str(c.value) for c in v.failed_conditions)})" if v.failed_conditions else ""
        nas = " [necessary and sufficient]" if v.necessary_and_sufficient else ""
        lines.append(f"  {criterion.value}: {v.status.value}{extra}{nas}")
    for pair in report.pairs:
        g = pair.groups
        lines.append(f"  pair {pair.pair}: {len(pair.connecting)} paths, S_I dim {g.s_i.rank}, "
                     f"S_II dim {g.s_ii.rank}, balanced {'yes' if g.holds else 'no'}")
    for condition, vector in report.witnesses.items():
        lines.append(f"  witness for condition {condition.value}: {np.array2string(vector, precision=6)}")
    lines.append(f"  predicted: {report.prediction.value}")
    return "\n".join(lines) + "\n"


def outcome_to_dict(label: OutcomeLabel, trajectory: Trajectory, prediction: SolutionClass,
                    agreement_residual: float, seed: int, config: Optional[Mapping[str, Any]] = None,
                    source: Optional[str] = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    if source is not None:
        out["source"] = source
    out.update({
        "outcome": label.kind.value,
        "signs": list(label.signs) if label.signs is not None else None,
        "groups": [list(g) for g in label.groups] if label.groups is not None else None,
        "terminal_residual": float(label.terminal_residual),
        "tol_agree": float(label.tol_agree),
        "tol_zero": float(label.tol_zero),
        "method": trajectory.method.value,
        "horizon": trajectory.horizon,
        "stamps": len(trajectory),
        "seed": seed,
        "initial_state": flat(trajectory.initial),
        "terminal_state": flat(trajectory.terminal),
        "spectral_prediction": solution_class_to_dict(prediction),
        "agreement_residual": float(agreement_residual),
        "agrees": label.kind is prediction.kind,
    })
    if config is not None:
        out["config"] = dict(config)
    return out


def render_outcome_human(outcome: Mapping[str, Any]) -> str:
    return (f"Outcome: {outcome['outcome']} (spectral prediction "
            f"{outcome['spectral_prediction']['class']}, agreement residual {outcome['agreement_residual']:.3e})\n")


def expectation_to_dict(instance: SynthesizedInstance) -> Dict[str, Any]:
    e = instance.expectation
    return {
        "recipe": instance.recipe.as_dict(),
        "expected_class": e.expected_class.value,
        "violation": e.violation.value,
        "failing_conditions": list(e.failing_conditions),
        "sigma": list(e.sigma) if e.sigma is not None else None,
        "psi": [flat(col) for col in np.asarray(e.psi).T] if e.psi is not None else None,
        "witness": flat(e.witness) if e.witness is not None else None,
        "notes": list(instance.notes),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_json(obj: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_graph_document(graph: MatrixWeightedGraph, path: Union[str, Path]) -> Path:
    return write_json(to_document(graph), path)
