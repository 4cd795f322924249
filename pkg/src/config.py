"""
Analysis configuration.

Defaults come from the environment (optionally a `.env` file at the repository root) and may be
overridden per run from the command line. Every report embeds `AnalysisConfig.as_dict()`.
"""
import os
from dataclasses import dataclass, asdict, fields, replace
from typing import Any, Dict

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, default))


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, default))


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every routine that makes a zero / nonzero decision."""
    sym: float = 1e-12
    definite: float = 1e-9
    rank: float = 1e-9
    angle: float = 1e-8


@dataclass(frozen=True)
class AnalysisConfig:
    tol_sym: float = 1e-12
    tol_def: float = 1e-9
    tol_rank: float = 1e-9
    tol_angle: float = 1e-8
    path_cap: int = 10_000
    partition_cap: int = 1 << 20
    jobs: int = 1
    seed: int = 0
    log_dir: str = "logs"
    horizon: float | None = None
    steps: int = 2000
    method: str = "exact"
    report_format: str = "json"

    @classmethod
    def from_env(cls) -> "AnalysisConfig":
        return cls(
            tol_sym=_env_float("CONSENSUS_TOL_SYM", 1e-12),
            tol_def=_env_float("CONSENSUS_TOL_DEF", 1e-9),
            tol_rank=_env_float("CONSENSUS_TOL_RANK", 1e-9),
            tol_angle=_env_float("CONSENSUS_TOL_ANGLE", 1e-8),
            path_cap=_env_int("CONSENSUS_PATH_CAP", 10_000),
            partition_cap=_env_int("CONSENSUS_PARTITION_CAP", 1 << 20),
            jobs=_env_int("CONSENSUS_JOBS", 1),
            seed=_env_int("CONSENSUS_SEED", 0),
            log_dir=os.getenv("CONSENSUS_LOG_DIR", "logs"),
        )

    def with_overrides(self, **kwargs: Any) -> "AnalysisConfig":
        """Return a copy with every non-None keyword applied. Unknown keys raise TypeError."""
        known = {f.name for f in fields(self)}
        unknown = set(kwargs) - known
        if unknown:
            raise TypeError(f"Unknown configuration keys: {sorted(unknown)}")
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances(sym=self.tol_sym, definite=self.tol_def, rank=self.tol_rank, angle=self.tol_angle)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
