import logging
from typing import Any, Dict

try:
    from typing import override
except ImportError:  # Python < 3.12
    from typing_extensions import override

from src.dynamics.integrator import export_csv
from src.logger import get_logger
from src.models.results.stage_result import StageResult
from src.pipeline.stage.context import FailedInstance, GraphJob, PipelineContext
from src.pipeline.stage.interface import StageInterface
from src.writer.report_writer import render_human, render_outcome_human, report_to_dict, write_json

logger = get_logger(
    __name__,
    handler_level=logging.DEBUG,
)


class ReportWriterStage(StageInterface):
    """
    Writes `<stem>.report.json` for analyzed jobs and `<stem>.trajectory.csv` plus
    `<stem>.outcome.json` for simulated ones into the output directory.
    """
    @override
    def initialize(self, stage_id: str, ctx: PipelineContext, **kwargs) -> Dict[str, Any]:
        self.stage_id = stage_id
        self.stage_name = "Report Writer Stage"
        ctx.out_dir.mkdir(parents=True, exist_ok=True)
        return {"id": stage_id, "name": self.stage_name, "out_dir": str(ctx.out_dir)}

    @override
    def process_batch(self, stage_data: StageResult[GraphJob, FailedInstance],
                      ctx: PipelineContext, **kwargs) -> StageResult[GraphJob, FailedInstance]:
        results = StageResult(self.stage_id, "Report Writer Results")
        if stage_data is None:
            return results

        for job in stage_data.success_values():
            try:
                self._write(job, ctx)
                results.add_ok(job)
            except OSError as e:
                logger.error(f"{job.source}: cannot write outputs: {e}")
                results.add_err(FailedInstance.from_exception(job, e))
        return self._count(results)

    def _write(self, job: GraphJob, ctx: PipelineContext) -> None:
        config = ctx.config.as_dict()
        if job.report is not None:
            document = report_to_dict(job.report, job.graph, config, source=job.source)
            job.outputs.append(str(write_json(document, ctx.out_dir / f"{job.stem}.report.json")))
            job.summary += render_human(job.report, job.source)
        if job.trajectory is not None:
            csv_path = export_csv(job.trajectory, job.graph.node_ids, job.graph.dim,
                                  ctx.out_dir / f"{job.stem}.trajectory.csv")
            job.outputs.append(str(csv_path))
            job.outputs.append(str(write_json(job.outcome, ctx.out_dir / f"{job.stem}.outcome.json")))
            job.summary += render_outcome_human(job.outcome)
        logger.debug(f"{job.source}: wrote {', '.join(job.outputs)}")

    @override
    def shutdown(self, ctx: PipelineContext) -> None:
        if ctx.summary_path is None:
            return
        self.write_shutdown_info(
            ctx.summary_path,
            f"{ctx.command}: {self.processed} instances written, {self.errors} write failures, out={ctx.out_dir}",
        )
