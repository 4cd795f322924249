import logging
from typing import Any, Dict

try:
    from typing import override
except ImportError:  # Python < 3.12
    from typing_extensions import override

from src.exception.graph import InvalidGraphError
from src.logger import get_logger
from src.models.results.stage_result import StageResult
from src.pipeline.stage.context import FailedInstance, GraphJob, PipelineContext
from src.pipeline.stage.interface import StageInterface
from src.reader.graph_reader import GraphReader

logger = get_logger(
    __name__,
    handler_level=logging.DEBUG,
)


class GraphDocumentValidation(StageInterface):
    """
    Reads each source document and validates it into a signed matrix-weighted graph.

    Documents that are missing, malformed or carry weights outside the sign calculus become
    failures with exit code 2; the remaining jobs carry their graph to the next stage.
    """
    @override
    def initialize(self, stage_id: str, ctx: PipelineContext, **kwargs) -> Dict[str, Any]:
        self.stage_id = stage_id
        self.stage_name = "Graph Document Validation Stage"
        return {"id": stage_id, "name": self.stage_name}

    @override
    def process_batch(self, stage_data: StageResult[GraphJob, FailedInstance],
                      ctx: PipelineContext, **kwargs) -> StageResult[GraphJob, FailedInstance]:
        results = StageResult(self.stage_id, "Graph Document Validation Results")
        if stage_data is None:
            return results

        tol = ctx.config.tolerances
        for job in stage_data.success_values():
            try:
                job.graph = GraphReader.read_graph(job.source, tol)
                results.add_ok(job)
            except InvalidGraphError as e:
                logger.error(f"{job.source}: {e}")
                results.add_err(FailedInstance.from_exception(job, e))
        logger.debug(f"{results.summary()}")
        return self._count(results)
