from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Sequence, Tuple

import networkx as nx
import numpy as np

from src.models.weight import SignClass, WeightMatrix


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    weight: WeightMatrix
    sign_class: SignClass

    @property
    def sign(self) -> int:
        return self.sign_class.sign

    @property
    def is_definite(self) -> bool:
        return self.sign_class.is_definite

    @property
    def magnitude(self) -> np.ndarray:
        """|A| = sgn(A) A, positive semidefinite."""
        return self.sign * self.weight.entries

    @property
    def key(self) -> frozenset:
        return frozenset((self.u, self.v))

    def other(self, node: str) -> str:
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise KeyError(f"{node!r} is not an endpoint of ({self.u!r}, {self.v!r})")

    def __str__(self) -> str:
        return f"({self.u}, {self.v})"


@dataclass(frozen=True)
class MatrixWeightedGraph:
    """
    Undirected signed matrix-weighted graph.

    Instances are produced by `src.graph.builder.validate_graph`, which establishes the invariants
    (simple, every weight classified and nonzero, connectivity flag set).
    """
    node_ids: Tuple[str, ...]
    dim: int
    edges: Tuple[Edge, ...]
    connected: bool = True

    @classmethod
    def from_edges(cls, node_ids: Sequence[str], dim: int,
                   edges: Sequence[Tuple[str, str, np.ndarray]], **kwargs) -> "MatrixWeightedGraph":
        """Build and validate a graph from (u, v, weight) triples."""
        from src.graph.builder import validate_graph

        document = {
            "d": dim,
            "nodes": list(node_ids),
            "edges": [{"u": u, "v": v, "w": np.asarray(w, dtype=float).tolist()} for u, v, w in edges],
        }
        return validate_graph(document, **kwargs)

    @property
    def n(self) -> int:
        return len(self.node_ids)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {node: i for i, node in enumerate(self.node_ids)}

    @cached_property
    def _edge_lookup(self) -> Dict[frozenset, Edge]:
        return {e.key: e for e in self.edges}

    def edge_between(self, u: str, v: str) -> Edge | None:
        return self._edge_lookup.get(frozenset((u, v)))

    def block(self, x: np.ndarray, node: str) -> np.ndarray:
        """The d-block of a stacked state belonging to `node`."""
        i = self.index[node]
        return x[i * self.dim:(i + 1) * self.dim]

    def to_networkx(self, definite_only: bool = False) -> nx.Graph:
        """
        Undirected networkx view with the `Edge` under the "edge" attribute.

        Nodes are inserted in document order and edges in (min index, max index) order, so neighbor
        iteration follows document order.
        """
        g = nx.Graph()
        g.add_nodes_from(self.node_ids)
        chosen = [e for e in self.edges if e.is_definite] if definite_only else list(self.edges)
        chosen.sort(key=lambda e: tuple(sorted((self.index[e.u], self.index[e.v]))))
        for e in chosen:
            g.add_edge(e.u, e.v, edge=e)
        return g

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


@dataclass(frozen=True)
class Laplacian:
    """dN x dN matrix-valued Laplacian L = C - A."""
    blocks: np.ndarray
    n: int
    d: int

    def __post_init__(self):
        arr = np.array(self.blocks, dtype=float, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "blocks", arr)

    def block(self, i: int, j: int) -> np.ndarray:
        d = self.d
        return self.blocks[i * d:(i + 1) * d, j * d:(j + 1) * d]

    @property
    def norm_inf(self) -> float:
        return float(np.linalg.norm(self.blocks, ord=np.inf)) if self.blocks.size else 0.0

    def __matmul__(self, x: np.ndarray) -> np.ndarray:
        return self.blocks @ x


@dataclass(frozen=True)
class GaugeAssignment:
    """Per-node signs; D = diag(sigma) (x) I_d. The first node is always +1."""
    sigma: Tuple[int, ...]
    node_ids: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        if any(s not in (-1, 1) for s in sigma):
            raise ValueError(f"gauge signs must be +1 or -1, got {sigma}")
        if sigma and sigma[0] != 1:
            raise ValueError("gauge of the first node must be +1")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "node_ids", tuple(self.node_ids))

    @classmethod
    def identity(cls, node_ids: Sequence[str]) -> "GaugeAssignment":
        return cls(tuple([1] * len(node_ids)), tuple(node_ids))

    @classmethod
    def normalized(cls, sigma: Sequence[int], node_ids: Sequence[str] = ()) -> "GaugeAssignment":
        """Flip all signs if needed so that the first node is +1."""
        flip = -1 if sigma and sigma[0] < 0 else 1
        return cls(tuple(flip * int(s) for s in sigma), tuple(node_ids))

    def matrix(self, d: int) -> np.ndarray:
        return np.kron(np.diag(np.asarray(self.sigma, dtype=float)), np.eye(d))

    def compose(self, other: "GaugeAssignment") -> "GaugeAssignment":
        if len(other.sigma) != len(self.sigma):
            raise ValueError("gauges of different sizes cannot be composed")
        return GaugeAssignment(tuple(a * b for a, b in zip(self.sigma, other.sigma)), self.node_ids)

    @property
    def is_identity(self) -> bool:
        return all(s == 1 for s in self.sigma)

    def of(self, node: str) -> int:
        return self.sigma[self.node_ids.index(node)]

    def __len__(self) -> int:
        return len(self.sigma)
