from dataclasses import dataclass, field
from typing import Sequence, Tuple

from src.models.graph import Edge, GaugeAssignment
from src.models.subspace import SubspaceBasis


@dataclass(frozen=True)
class Partition:
    """Bipartition (V1, V2) of the nodes; canonical when the first node is in V1."""
    v1: Tuple[str, ...]
    v2: Tuple[str, ...]

    def __post_init__(self):
        overlap = set(self.v1) & set(self.v2)
        if overlap:
            raise ValueError(f"partition sets overlap on {sorted(overlap)}")

    def side(self, node: str) -> int:
        if node in self.v1:
            return 1
        if node in self.v2:
            return -1
        raise KeyError(node)

    def covers(self, node_ids: Sequence[str]) -> bool:
        return set(self.v1) | set(self.v2) == set(node_ids)

    @property
    def is_trivial(self) -> bool:
        """(V, {}) -- the consensus partition."""
        return len(self.v2) == 0


@dataclass(frozen=True)
class BalancingSet:
    """
    Edges whose sign negation renders the graph (V1, V2)-structurally balanced, with the basis of
    their common null space.
    """
    partition: Partition
    edges: Tuple[Edge, ...]
    null_basis: SubspaceBasis = field(compare=False)
    gauge: GaugeAssignment = field(compare=False)

    @property
    def nontrivial(self) -> bool:
        return not self.null_basis.is_trivial

    @property
    def edge_keys(self) -> frozenset:
        return frozenset(e.key for e in self.edges)


@dataclass(frozen=True)
class NBSEnumeration:
    """Every qualifying balancing set, in enumeration order."""
    sets: Tuple[BalancingSet, ...]
    candidates: int

    @property
    def unique(self) -> bool:
        return len(self.sets) == 1

    @property
    def exists(self) -> bool:
        return len(self.sets) > 0

    def reference(self) -> BalancingSet | None:
        """The set with the fewest edges (first in enumeration order on ties)."""
        if not self.sets:
            return None
        return min(self.sets, key=lambda s: len(s.edges))

    def __len__(self) -> int:
        return len(self.sets)
