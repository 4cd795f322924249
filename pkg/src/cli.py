"""
Command-line front end.

python -m src.cli analyze  GRAPH [GRAPH ...] [--out DIR] [--format json|human] [tolerance / cap flags]
python -m src.cli simulate GRAPH [GRAPH ...] [--seed N] [--horizon T] [--method exact|rk4|adaptive]
python -m src.cli gen      [--continents K] [--bridges B] [--violate condition4] [--seed N] ...
python -m src.cli validate GRAPH [GRAPH ...]

Exit codes: 0 success (a failing criterion is still a successful analysis), 2 invalid input or
infeasible recipe, 3 search budget exceeded, 4 trajectory not settled.
"""
import argparse
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Callable, Dict, List, Optional

from src.config import AnalysisConfig
from src.exception.analysis import InfeasibleRecipeError
from src.generator.synthesize import synthesize
from src.logger import resolve_log_dir, root_logger
from src.models.graph import MatrixWeightedGraph
from src.models.recipe import InstanceRecipe, NullFrames, Violation
from src.models.results.stage_result import StageResult
from src.models.trajectory import IntegrationMethod
from src.pipeline.runner import process_in_pool
from src.pipeline.stage.analysis.graph_validation import GraphDocumentValidation
from src.pipeline.stage.analysis.report_writer_stage import ReportWriterStage
from src.pipeline.stage.analysis.simulation_stage import SimulationStage
from src.pipeline.stage.analysis.verdict_stage import VerdictStage
from src.pipeline.stage.context import PipelineContext
from src.writer.report_writer import expectation_to_dict, write_graph_document, write_json

logger = logging.getLogger(__name__)

SUMMARY_FILE = "run_summary.txt"


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Random seed (default from CONSENSUS_SEED)")
    common.add_argument("--out", default=".", help="Output directory (default: current directory)")
    common.add_argument("--format", dest="report_format", choices=("json", "human"), default="json",
                        help="Standard output format; files are always JSON")
    common.add_argument("--tol-def", type=float, default=None, help="Relative definiteness tolerance")
    common.add_argument("--tol-rank", type=float, default=None, help="Relative rank tolerance")
    common.add_argument("--horizon", type=float, default=None, help="Integration horizon (default 30 / lambda_2+)")
    common.add_argument("--path-cap", type=_positive_int, default=None, help="Connecting paths per continent pair")
    common.add_argument("--partition-cap", type=_positive_int, default=None, help="Sign assignments to enumerate")
    common.add_argument("--jobs", type=_positive_int, default=None, help="Worker processes for batches")
    common.add_argument("--method", choices=[m.value for m in IntegrationMethod], default=None,
                        help="Integration method (default exact)")
    common.add_argument("--steps", type=_positive_int, default=None, help="Uniform integration intervals")
    common.add_argument("--name", default=None, help="Output stem for single-input commands")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="python -m src.cli",
                                     description="Bipartite consensus analysis of signed matrix-weighted networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    for command, text in (("analyze", "Write a condition report for each graph"),
                          ("simulate", "Integrate the dynamics from a seeded random state"),
                          ("validate", "Check graph documents and print a summary")):
        p = sub.add_parser(command, parents=[common], help=text, description=text)
        p.add_argument("graphs", nargs="+", help="Graph document paths")

    gen = sub.add_parser("gen", parents=[common], help="Synthesize an instance and its expectation",
                         description="Synthesize an instance and its expectation")
    gen.add_argument("--continents", type=_positive_int, default=2)
    gen.add_argument("--nodes-per-continent", type=_positive_int, default=2)
    gen.add_argument("--bridges", type=int, default=2)
    gen.add_argument("--path-length", type=_positive_int, default=1)
    gen.add_argument("--dim", type=_positive_int, default=2)
    gen.add_argument("--nulls", choices=[n.value for n in NullFrames], default=NullFrames.ORTHOGONAL.value)
    gen.add_argument("--signed", action="store_true", help="Random target partition instead of (V, {})")
    gen.add_argument("--nbs-bridge", action="store_true", help="Add one balancing bridge per continent pair")
    gen.add_argument("--violate", choices=[v.value for v in Violation], default=Violation.NONE.value)
    return parser


def _config(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig.from_env().with_overrides(
        seed=args.seed,
        tol_def=args.tol_def,
        tol_rank=args.tol_rank,
        horizon=args.horizon,
        path_cap=args.path_cap,
        partition_cap=args.partition_cap,
        jobs=args.jobs,
        method=args.method,
        steps=args.steps,
        report_format=args.report_format,
    )


def _context(args: argparse.Namespace, config: AnalysisConfig) -> PipelineContext:
    return PipelineContext(config=config, out_dir=Path(args.out), command=args.command, name=args.name,
                           summary_path=resolve_log_dir(config.log_dir) / SUMMARY_FILE)


def _finish(result: StageResult) -> int:
    for failure in result.failed_values():
        print(f"error: {failure.source}: {failure.message}", file=sys.stderr)
    return max((f.exit_code for f in result.failed_values()), default=0)


def _report(result: StageResult, config: AnalysisConfig) -> None:
    for job in result.success_values():
        if config.report_format == "human":
            print(job.summary, end="")
        else:
            for path in job.outputs:
                print(path)


def cmd_analyze(args: argparse.Namespace, config: AnalysisConfig) -> int:
    stages = [GraphDocumentValidation, VerdictStage, ReportWriterStage]
    result = process_in_pool(args.graphs, stages, _context(args, config), config.jobs)
    _report(result, config)
    return _finish(result)


def cmd_simulate(args: argparse.Namespace, config: AnalysisConfig) -> int:
    stages = [GraphDocumentValidation, SimulationStage, ReportWriterStage]
    result = process_in_pool(args.graphs, stages, _context(args, config), config.jobs)
    _report(result, config)
    return _finish(result)


def describe_graph(graph: MatrixWeightedGraph) -> str:
    classes = Counter(
        f"{'positive' if e.sign > 0 else 'negative'} {e.sign_class.definiteness.value}" for e in graph.edges
    )
    parts = ", ".join(f"{count} {name}" for name, count in sorted(classes.items())) or "no edges"
    return f"N={graph.n}, d={graph.dim}, edges: {parts}; {'connected' if graph.connected else 'disconnected'}"


def cmd_validate(args: argparse.Namespace, config: AnalysisConfig) -> int:
    result = process_in_pool(args.graphs, [GraphDocumentValidation], _context(args, config), config.jobs)
    for job in result.success_values():
        print(f"{job.source}: {describe_graph(job.graph)}")
    return _finish(result)


def recipe_from_args(args: argparse.Namespace, seed: int) -> InstanceRecipe:
    return InstanceRecipe(
        seed=seed,
        continents=args.continents,
        nodes_per_continent=args.nodes_per_continent,
        bridges=args.bridges,
        path_length=args.path_length,
        dim=args.dim,
        nulls=NullFrames(args.nulls),
        signed=args.signed,
        nbs_bridge=args.nbs_bridge,
        violation=Violation(args.violate),
    )


def cmd_gen(args: argparse.Namespace, config: AnalysisConfig) -> int:
    recipe = recipe_from_args(args, config.seed)
    try:
        instance = synthesize(recipe)
    except InfeasibleRecipeError as e:
        print(f"error: infeasible recipe: {e}", file=sys.stderr)
        return e.exit_code
    stem = args.name or f"instance_{config.seed}"
    out = Path(args.out)
    graph_path = write_graph_document(instance.graph, out / f"{stem}.json")
    expect_path = write_json(expectation_to_dict(instance), out / f"{stem}.expect.json")
    if config.report_format == "human":
        print(f"{graph_path}: expected {instance.expectation.expected_class.value}, "
              f"failing conditions {list(instance.expectation.failing_conditions)}")
    else:
        print(graph_path)
        print(expect_path)
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, AnalysisConfig], int]] = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "validate": cmd_validate,
    "gen": cmd_gen,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.horizon is not None and not args.horizon > 0:
        parser.error(f"--horizon must be positive, got {args.horizon}")
    config = _config(args)
    root_logger(config.log_dir, console_level=logging.WARNING, log_level=logging.INFO)
    logger.info(f"{args.command} with {config.as_dict()}")
    return COMMANDS[args.command](args, config)


if __name__ == "__main__":
    sys.exit(main())
