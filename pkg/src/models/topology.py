from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.models.graph import Edge
from src.models.subspace import SubspaceBasis


@dataclass(frozen=True)
class Continent:
    """
    Node set of a maximal tree of definite edges together with every edge it induces.

    `tree_signs` is the internal gauge read off the breadth-first spanning tree; `conflict_cycle`
    is set when a definite non-tree edge contradicts it.
    """
    index: int
    nodes: Tuple[str, ...]
    root: str
    tree_edges: Tuple[Edge, ...]
    edges: Tuple[Edge, ...]
    tree_signs: Dict[str, int] = field(compare=False)
    conflict_cycle: Optional[Tuple[str, ...]] = None
    anchored: bool = True

    @property
    def has_conflict(self) -> bool:
        return self.conflict_cycle is not None

    def __contains__(self, node: str) -> bool:
        return node in self.nodes

    def __hash__(self) -> int:
        return hash((self.index, self.nodes))


@dataclass(frozen=True)
class PathDescriptor:
    """
    A semidefinite path between two continents, oriented from K_l to K_m.

    `effective_sign` is sgn(P) corrected by the internal gauges of both endpoints, so all paths of
    a continent pair refer to the same representatives.
    """
    pair: Tuple[int, int]
    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    sign: int
    effective_sign: int
    edge_nulls: Tuple[SubspaceBasis, ...] = field(compare=False)
    null_space: SubspaceBasis = field(compare=False)
    union_is_span: bool = True
    nbs_edges: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def interior(self) -> Tuple[str, ...]:
        return self.nodes[1:-1]

    @property
    def edge_signs(self) -> Tuple[int, ...]:
        return tuple(e.sign for e in self.edges)

    @property
    def primary(self) -> bool:
        """At most one balancing-set edge."""
        return len(self.nbs_edges) <= 1

    def __str__(self) -> str:
        return "-".join(self.nodes)


@dataclass(frozen=True)
class ConnectingPaths:
    """All connecting paths of a continent pair plus the node-independence verdict."""
    pair: Tuple[int, int]
    paths: Tuple[PathDescriptor, ...]
    shared_interior_nodes: Tuple[str, ...] = ()

    @property
    def node_independent(self) -> bool:
        return len(self.shared_interior_nodes) == 0

    def __len__(self) -> int:
        return len(self.paths)
