from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from src.models.subspace import SolutionKind


class IntegrationMethod(Enum):
    EXACT = "exact"
    RK4 = "rk4"
    ADAPTIVE = "adaptive"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States of x' = -Lx on a uniform time grid; row k of `states` is x(times[k])."""
    times: np.ndarray
    states: np.ndarray
    method: IntegrationMethod

    def __post_init__(self):
        for name in ("times", "states"):
            arr = np.array(getattr(self, name), dtype=float, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.states.shape[0] != self.times.shape[0]:
            raise ValueError("one state per time stamp is required")

    @property
    def initial(self) -> np.ndarray:
        return self.states[0]

    @property
    def terminal(self) -> np.ndarray:
        return self.states[-1]

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def __len__(self) -> int:
        return self.times.shape[0]


@dataclass(frozen=True)
class OutcomeLabel:
    """Observed limit behaviour of a trajectory."""
    kind: SolutionKind
    terminal_residual: float
    tol_agree: float
    tol_zero: float
    signs: Optional[Tuple[int, ...]] = None
    groups: Optional[Tuple[Tuple[str, ...], ...]] = None

    @property
    def is_bipartite(self) -> bool:
        return self.kind in (SolutionKind.CONSENSUS, SolutionKind.BIPARTITE)
