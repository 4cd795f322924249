from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.models.graph import MatrixWeightedGraph
from src.models.subspace import SolutionKind


class Violation(Enum):
    NONE = "none"
    CONDITION2 = "condition2"
    CONDITION3 = "condition3"
    CONDITION4 = "condition4"
    CONDITION5 = "condition5"
    INDEFINITE_CYCLE = "indefinite-cycle"


class NullFrames(Enum):
    ORTHOGONAL = "orthogonal"
    AXIS = "axis"


@dataclass(frozen=True)
class InstanceRecipe:
    """Everything needed, together with the seed, to rebuild one synthetic instance."""
    seed: int = 0
    continents: int = 2
    nodes_per_continent: int = 2
    bridges: int = 2
    path_length: int = 1
    dim: int = 2
    nulls: NullFrames = NullFrames.ORTHOGONAL
    signed: bool = False
    nbs_bridge: bool = False
    violation: Violation = Violation.NONE

    def as_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "continents": self.continents,
            "nodes_per_continent": self.nodes_per_continent,
            "bridges": self.bridges,
            "path_length": self.path_length,
            "dim": self.dim,
            "nulls": self.nulls.value,
            "signed": self.signed,
            "nbs_bridge": self.nbs_bridge,
            "violation": self.violation.value,
        }


@dataclass(frozen=True, eq=False)
class Expectation:
    """What the analysis and the dynamics should report for a synthesized instance."""
    expected_class: SolutionKind
    violation: Violation
    failing_conditions: Tuple[int, ...] = ()
    sigma: Optional[Tuple[int, ...]] = None
    psi: Optional[np.ndarray] = None
    witness: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class SynthesizedInstance:
    recipe: InstanceRecipe
    graph: MatrixWeightedGraph
    expectation: Expectation
    notes: List[str] = field(default_factory=list)
