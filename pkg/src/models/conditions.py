from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.models.balance import BalancingSet, NBSEnumeration
from src.models.subspace import SolutionClass, SubspaceBasis
from src.models.topology import ConnectingPaths, Continent, PathDescriptor


class Condition(Enum):
    """The five hypotheses shared by the path criteria, numbered as reported."""
    UNIQUE_NBS = 1
    PATH_BALANCE = 2
    TOPOLOGY = 3
    NULL_INDEPENDENCE = 4
    NBS_PATH_ISOLATION = 5


class Status(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not_applicable"


class Criterion(Enum):
    """Sufficient (and, for edge bridges, necessary) criteria for bipartite consensus."""
    DISJOINT_PATHS = "verdict_theorem_3_8"
    PRIMARY_PATHS = "verdict_corollary_3_11"
    EDGE_BRIDGES = "verdict_theorem_3_12"


class Prediction(Enum):
    CONSENSUS = "Consensus"
    BIPARTITE = "BipartiteConsensus"
    NOT_BIPARTITE = "NotBipartite"
    TRIVIAL = "Trivial"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PathGroups:
    """
    Paths of one continent pair split by effective sign, with
    S = span(B_Kl u B_Km) cap (cap over the group of null(P)).
    """
    pair: Tuple[int, int]
    group_i: Tuple[PathDescriptor, ...]
    group_ii: Tuple[PathDescriptor, ...]
    s_i: SubspaceBasis = field(compare=False)
    s_ii: SubspaceBasis = field(compare=False)
    holds: bool = False
    relation: Optional[int] = None

    @property
    def vacuous(self) -> bool:
        return not self.group_i and not self.group_ii


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """
    Edge-wise null conditions of one path together with the endpoint constraint.

    Columns are the path states x_1 .. x_{rho+1}; row blocks are [A_bar 0 ..], the relation
    x_1 - s x_{rho+1}, then one block per edge.
    """
    path_nodes: Tuple[str, ...]
    d: int
    weights: Tuple[np.ndarray, ...]
    edge_signs: Tuple[int, ...]
    relation_sign: int
    a_bar: np.ndarray
    gamma0: np.ndarray
    nbs_index: Optional[int] = None
    r: Optional[np.ndarray] = None
    q: Optional[np.ndarray] = None
    gamma_bar: Optional[np.ndarray] = None
    gamma_bar0: Optional[np.ndarray] = None
    a_hat: Optional[np.ndarray] = None

    @property
    def rho(self) -> int:
        return len(self.weights)

    @property
    def alphas(self) -> Tuple[int, ...]:
        """Cumulative signs alpha_i = s_1 ... s_i."""
        out, acc = [], 1
        for s in self.edge_signs:
            acc *= s
            out.append(acc)
        return tuple(out)

    @property
    def primary_case(self) -> bool:
        return self.relation_sign == self.alphas[-1]


@dataclass(frozen=True)
class RankSplit:
    rank_r: int
    rank_residual: int
    rank_stacked: int

    @property
    def identity_holds(self) -> bool:
        return self.rank_stacked == self.rank_r + self.rank_residual


@dataclass
class CriterionVerdict:
    criterion: Criterion
    status: Status
    failed_conditions: List[Condition] = field(default_factory=list)
    necessary_and_sufficient: bool = False
    note: str = ""


@dataclass
class PathChecks:
    """Per-path outcomes of the null-independence and balancing-edge isolation checks."""
    path: PathDescriptor
    null_independent: bool
    isolated: Optional[bool] = None
    isolation_note: str = ""


@dataclass
class PairReport:
    pair: Tuple[int, int]
    connecting: ConnectingPaths
    groups: PathGroups
    checks: List[PathChecks] = field(default_factory=list)


@dataclass
class ConditionReport:
    """Everything the analysis derived for one graph."""
    connected: bool
    continents: List[Continent]
    free_nodes: List[str]
    nbs: NBSEnumeration
    reference_nbs: Optional[BalancingSet]
    nbs_null: Optional[SubspaceBasis]
    continent_nulls: Dict[int, SubspaceBasis]
    pairs: List[PairReport]
    conditions: Dict[Condition, bool]
    uncovered: Dict[str, List[Any]]
    verdicts: Dict[Criterion, CriterionVerdict]
    prediction: Prediction
    predicted_class: Optional[SolutionClass] = None
    witnesses: Dict[Condition, np.ndarray] = field(default_factory=dict)

    def verdict(self, criterion: Criterion) -> Status:
        return self.verdicts[criterion].status

    def failing(self) -> List[int]:
        return sorted(c.value for c, ok in self.conditions.items() if not ok)
