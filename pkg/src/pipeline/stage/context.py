from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from src.config import AnalysisConfig
from src.models.conditions import ConditionReport
from src.models.graph import MatrixWeightedGraph
from src.models.trajectory import Trajectory


@dataclass(frozen=True)
class PipelineContext:
    """Per-run settings shared by every stage; picklable so pool workers receive a copy."""
    config: AnalysisConfig
    out_dir: Path
    command: str
    name: Optional[str] = None
    summary_path: Optional[Path] = None

    def stem_for(self, source: str, total: int) -> str:
        if self.name and total == 1:
            return self.name
        return Path(source).stem


@dataclass
class GraphJob:
    """One input graph as it moves through the stages."""
    index: int
    source: str
    stem: str
    graph: Optional[MatrixWeightedGraph] = None
    report: Optional[ConditionReport] = None
    trajectory: Optional[Trajectory] = None
    x0: Optional[np.ndarray] = None
    outcome: Optional[dict] = None
    summary: str = ""
    outputs: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class FailedInstance:
    index: int
    source: str
    error_type: str
    message: str
    exit_code: int

    @classmethod
    def from_exception(cls, job: GraphJob, error: Exception) -> "FailedInstance":
        return cls(job.index, job.source, type(error).__name__, str(error), getattr(error, "exit_code", 1))
