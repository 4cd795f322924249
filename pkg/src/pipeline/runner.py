import logging
import multiprocessing as mp
from collections.abc import Callable
from typing import List, Sequence

from src.models.results.stage_result import StageResult
from src.pipeline.stage.context import FailedInstance, GraphJob, PipelineContext
from src.pipeline.stage.interface import StageInterface

logger = logging.getLogger(__name__)

StageFactory = Callable[[], StageInterface]


def process_batch(sources: Sequence[str],
                  stage_factory: List[StageFactory],
                  ctx: PipelineContext,
                  offset: int = 0,
                  total: int | None = None) -> StageResult[GraphJob, FailedInstance]:
    """
    Run `sources` through fresh instances of the stages, in order.

    Each stage only sees the jobs that survived the previous one; failures of every stage are
    collected and returned together with the survivors of the last stage, both in input order.

    Args:
        sources: graph document paths.
        stage_factory: callables (usually the stage classes) producing the stages.
        ctx: shared pipeline context.
        offset: input index of sources[0] when this is one chunk of a larger run.
        total: size of the whole run (used to decide output stems).
    """
    total = len(sources) if total is None else total
    pipeline = _initialize_stages(stage_factory, ctx)

    current = _make_entry_stage(sources, ctx, offset, total)
    failures: List[FailedInstance] = []
    for stage in pipeline:
        current = stage.process_batch(current, ctx)
        failures.extend(current.failed_values())

    for stage in reversed(pipeline):
        try:
            stage.shutdown(ctx)
            logger.debug(f"Shutdown stage {stage.stage_name}")
        except Exception as e:
            logger.exception(f"Error during shutdown of stage {stage.stage_name}: {e}")

    result = StageResult("Pipeline", f"{ctx.command} over {len(sources)} sources")
    for job in current.success_values():
        result.add_ok(job)
    for failure in sorted(failures, key=lambda f: f.index):
        result.add_err(failure)
    return result


def process_in_pool(sources: Sequence[str],
                    stage_factory: List[StageFactory],
                    ctx: PipelineContext,
                    jobs: int = 1) -> StageResult[GraphJob, FailedInstance]:
    """
    Split `sources` into `jobs` contiguous chunks, process them in a multiprocessing pool and
    merge the chunk results in input order, so the outcome does not depend on `jobs`.
    """
    sources = list(sources)
    jobs = max(1, min(int(jobs), len(sources)))
    if jobs == 1:
        return process_batch(sources, stage_factory, ctx)

    size, extra = divmod(len(sources), jobs)
    chunks, start = [], 0
    for i in range(jobs):
        end = start + size + (1 if i < extra else 0)
        chunks.append((sources[start:end], stage_factory, ctx, start, len(sources)))
        start = end

    logger.info(f"Processing {len(sources)} sources in {jobs} worker processes")
    with mp.Pool(jobs) as p:
        parts = p.starmap(process_batch, chunks)
    return StageResult("Pipeline", f"{ctx.command} over {len(sources)} sources").extend(parts)


def _initialize_stages(stage_factory: List[StageFactory], ctx: PipelineContext) -> List[StageInterface]:
    if not isinstance(stage_factory, list):
        raise ValueError("stage_factory must be a list of callables producing StageInterface instances")
    if not isinstance(ctx, PipelineContext):
        raise ValueError("ctx must be a PipelineContext")

    stages = [factory() for factory in stage_factory]
    for i, stage in enumerate(stages):
        if not isinstance(stage, StageInterface):
            raise ValueError(f"stage_factory[{i}] did not produce a StageInterface instance")
        stage.initialize(stage_id=str(i), ctx=ctx)
        logger.debug(f"Initialized stage {i}: {stage.__class__.__name__}")
    return stages


def _make_entry_stage(sources: Sequence[str], ctx: PipelineContext, offset: int,
                      total: int) -> StageResult[GraphJob, FailedInstance]:
    result = StageResult("Entry point", "Initial stage result with one job per source")
    for k, source in enumerate(sources):
        result.add_ok(GraphJob(offset + k, str(source), ctx.stem_for(str(source), total)))
    return result
