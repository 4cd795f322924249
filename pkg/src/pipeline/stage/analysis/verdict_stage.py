import logging
from typing import Any, Dict

try:
    from typing import override
except ImportError:  # Python < 3.12
    from typing_extensions import override

import numpy as np

from src.conditions.verdict import full_verdict
from src.exception.analysis import AnalysisError
from src.logger import get_logger
from src.models.results.stage_result import StageResult
from src.pipeline.stage.context import FailedInstance, GraphJob, PipelineContext
from src.pipeline.stage.interface import StageInterface
from src.utils.time_tracker import timer

logger = get_logger(
    __name__,
    handler_level=logging.DEBUG,
)


class VerdictStage(StageInterface):
    """Runs the full condition analysis on every validated graph."""
    @override
    def initialize(self, stage_id: str, ctx: PipelineContext, **kwargs) -> Dict[str, Any]:
        self.stage_id = stage_id
        self.stage_name = "Verdict Stage"
        return {"id": stage_id, "name": self.stage_name}

    @override
    def process_batch(self, stage_data: StageResult[GraphJob, FailedInstance],
                      ctx: PipelineContext, **kwargs) -> StageResult[GraphJob, FailedInstance]:
        results = StageResult(self.stage_id, "Verdict Results")
        if stage_data is None:
            return results

        for job in stage_data.success_values():
            try:
                job.report = self._analyze(job, ctx)
                results.add_ok(job)
            except (AnalysisError, np.linalg.LinAlgError) as e:
                logger.error(f"{job.source}: {e}")
                results.add_err(FailedInstance.from_exception(job, e))
        logger.debug(f"{results.summary()}")
        return self._count(results)

    @timer(msg="Condition analysis finished")
    def _analyze(self, job: GraphJob, ctx: PipelineContext):
        return full_verdict(job.graph, ctx.config)
