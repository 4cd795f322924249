import logging
from typing import Any, Dict

try:
    from typing import override
except ImportError:  # Python < 3.12
    from typing_extensions import override

import numpy as np

from src.dynamics.integrator import integrate
from src.dynamics.outcome import classify_outcome
from src.exception.dynamics import DynamicsError
from src.graph.builder import build_laplacian
from src.logger import get_logger
from src.models.results.stage_result import StageResult
from src.pipeline.stage.context import FailedInstance, GraphJob, PipelineContext
from src.pipeline.stage.interface import StageInterface
from src.spectral.classification import classify_solution_space
from src.spectral.null_space import decompose, predicted_limit
from src.utils.linalg import inf_norm
from src.writer.report_writer import outcome_to_dict

logger = get_logger(
    __name__,
    handler_level=logging.DEBUG,
)


def initial_state(size: int, seed: int) -> np.ndarray:
    """Uniform draw from [-1, 1]^size."""
    return np.random.default_rng(seed).uniform(-1.0, 1.0, size=size)


class SimulationStage(StageInterface):
    """
    Integrates x' = -Lx from a seeded random initial state, labels the outcome and compares it
    with the spectral classification of null(L).
    """
    @override
    def initialize(self, stage_id: str, ctx: PipelineContext, **kwargs) -> Dict[str, Any]:
        self.stage_id = stage_id
        self.stage_name = "Simulation Stage"
        return {"id": stage_id, "name": self.stage_name, "method": ctx.config.method}

    @override
    def process_batch(self, stage_data: StageResult[GraphJob, FailedInstance],
                      ctx: PipelineContext, **kwargs) -> StageResult[GraphJob, FailedInstance]:
        results = StageResult(self.stage_id, "Simulation Results")
        if stage_data is None:
            return results

        for job in stage_data.success_values():
            try:
                self._simulate(job, ctx)
                results.add_ok(job)
            except (DynamicsError, ValueError) as e:
                logger.error(f"{job.source}: {e}")
                results.add_err(FailedInstance.from_exception(job, e))
        logger.debug(f"{results.summary()}")
        return self._count(results)

    def _simulate(self, job: GraphJob, ctx: PipelineContext) -> None:
        config = ctx.config
        tol = config.tolerances
        graph = job.graph
        laplacian = build_laplacian(graph)
        decomposition = decompose(laplacian, tol)
        job.x0 = initial_state(graph.n * graph.dim, config.seed)
        job.trajectory = integrate(laplacian, job.x0, config.horizon, config.steps, config.method,
                                   decomposition, tol)
        label = classify_outcome(job.trajectory, laplacian, graph.node_ids, decomposition, tol)
        prediction = classify_solution_space(decomposition.null_basis, graph.n, graph.dim, tol, graph.node_ids)
        residual = inf_norm(job.trajectory.terminal - predicted_limit(decomposition, job.x0))
        job.outcome = outcome_to_dict(label, job.trajectory, prediction, residual, config.seed,
                                      config.as_dict(), source=job.source)
        logger.info(f"{job.source}: outcome {label.kind.value}, spectral {prediction.kind.value}, "
                    f"residual {residual:.3e}")
