"""
Seeded construction of instances that satisfy, or violate one targeted hypothesis of, the path
criteria.

Continents are star trees with random definite weights. Bridges are semidefinite paths whose edge
null spaces are distinct columns of one orthogonal frame per continent pair, and every edge sign
agrees with a target partition unless it is meant to be a balancing edge.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.exception.analysis import InfeasibleRecipeError
from src.generator.psd import as_rng, make_psd, random_definite, random_orthogonal_frame
from src.models.graph import MatrixWeightedGraph
from src.models.recipe import Expectation, InstanceRecipe, NullFrames, SynthesizedInstance, Violation
from src.models.subspace import SolutionKind

logger = logging.getLogger(__name__)

REQUIRED_DIM = {
    Violation.CONDITION2: 2,
    Violation.CONDITION3: 3,
    Violation.CONDITION4: 2,
    Violation.CONDITION5: 2,
}


class _Builder:
    """Accumulates nodes, signed weights and the target gauge while a recipe is realized."""

    def __init__(self, recipe: InstanceRecipe):
        self.recipe = recipe
        self.d = recipe.dim
        self.rng = as_rng(recipe.seed)
        self.nodes: List[str] = []
        self.sigma: Dict[str, int] = {}
        self.edges: List[Tuple[str, str, np.ndarray]] = []
        self.used = set()
        self.continents: List[List[str]] = []

    def _random_sign(self) -> int:
        return int(self.rng.choice((1, -1))) if self.recipe.signed else 1

    def add_node(self, sign: int) -> str:
        node = str(len(self.nodes) + 1)
        self.nodes.append(node)
        self.sigma[node] = sign
        return node

    def add_edge(self, u: str, v: str, weight: np.ndarray) -> None:
        key = frozenset((u, v))
        if key in self.used:
            raise InfeasibleRecipeError(f"edge ({u}, {v}) would be added twice")
        self.used.add(key)
        self.edges.append((u, v, weight))

    def consistent_sign(self, u: str, v: str) -> int:
        return self.sigma[u] * self.sigma[v]

    def add_continents(self, count: int, size: int) -> None:
        for c in range(count):
            block_sign = 1 if c == 0 else self._random_sign()
            center = self.add_node(block_sign)
            members = [center]
            for _ in range(size - 1):
                leaf = self.add_node(block_sign * self._random_sign())
                weight = random_definite(self.d, self.rng, self.consistent_sign(center, leaf))
                self.add_edge(center, leaf, weight.entries)
                members.append(leaf)
            self.continents.append(members)

    def semidefinite(self, u: str, v: str, null: np.ndarray, sign: Optional[int] = None) -> None:
        sign = self.consistent_sign(u, v) if sign is None else sign
        self.add_edge(u, v, make_psd(self.d, null, self.rng, sign).entries)

    def free_node(self) -> str:
        return self.add_node(self._random_sign())

    def endpoints(self, left: int, right: int, count: int) -> List[Tuple[str, str]]:
        """`count` distinct (a, b) pairs with a in continent `left` and b in `right`."""
        options = [(a, b) for a in self.continents[left] for b in self.continents[right]]
        if count > len(options):
            raise InfeasibleRecipeError(
                f"{count} direct bridges need more than {len(options)} node pairs between two continents")
        order = self.rng.permutation(len(options))
        return [options[i] for i in order[:count]]

    def frame(self) -> np.ndarray:
        return random_orthogonal_frame(self.d, self.rng, self.recipe.nulls is NullFrames.AXIS)

    def bridge(self, a: str, b: str, nulls: List[np.ndarray]) -> None:
        """Consistent semidefinite path a - free nodes - b, one null direction per edge."""
        chain = [a] + [self.free_node() for _ in range(len(nulls) - 1)] + [b]
        for (u, v), null in zip(zip(chain, chain[1:]), nulls):
            self.semidefinite(u, v, null)

    def graph(self) -> MatrixWeightedGraph:
        return MatrixWeightedGraph.from_edges(self.nodes, self.d, self.edges)

    def gauge(self) -> Tuple[int, ...]:
        ref = self.sigma[self.nodes[0]]
        return tuple(ref * self.sigma[n] for n in self.nodes)

    def bipartite_kind(self) -> SolutionKind:
        return SolutionKind.CONSENSUS if all(s == 1 for s in self.gauge()) else SolutionKind.BIPARTITE


def _column(frame: np.ndarray, k: int) -> np.ndarray:
    return frame[:, k:k + 1]


def _check(recipe: InstanceRecipe) -> None:
    if recipe.dim < 1 or recipe.continents < 1 or recipe.nodes_per_continent < 1:
        raise InfeasibleRecipeError("dimension, continent count and continent size must be positive")
    if recipe.path_length < 1:
        raise InfeasibleRecipeError("bridging paths have at least one edge")
    needed = REQUIRED_DIM.get(recipe.violation)
    if needed is not None and recipe.dim < needed:
        raise InfeasibleRecipeError(f"violation {recipe.violation.value} needs d >= {needed}")
    if recipe.violation is Violation.CONDITION3 and recipe.nodes_per_continent < 2:
        raise InfeasibleRecipeError("violation condition3 needs at least 2 nodes per continent")
    if recipe.violation is Violation.INDEFINITE_CYCLE and recipe.nodes_per_continent < 3:
        raise InfeasibleRecipeError("an indefinite cycle needs at least 3 nodes per continent")
    through_free = recipe.violation in REQUIRED_DIM or (recipe.continents > 1 and recipe.path_length > 1)
    if through_free and recipe.nodes_per_continent < 2:
        raise InfeasibleRecipeError("bridges through free nodes need continents of at least 2 nodes")
    bridged = recipe.violation is not Violation.NONE and recipe.violation is not Violation.INDEFINITE_CYCLE
    if recipe.dim == 1 and (bridged or (recipe.continents > 1 and recipe.bridges > 0)):
        raise InfeasibleRecipeError("d = 1 admits no semidefinite bridges")


def synthesize(recipe: InstanceRecipe) -> SynthesizedInstance:
    """
    Build the graph of `recipe` together with its expected solution class, failing conditions and,
    for the null-independence and balancing-path violations, a witness null vector.

    Raises:
        InfeasibleRecipeError: the requested structure cannot be realized.
    """
    _check(recipe)
    if recipe.violation in REQUIRED_DIM:
        instance = _violation(recipe)
    else:
        instance = _standard(recipe)
    logger.info(f"Synthesized {recipe.violation.value} instance: N={instance.graph.n}, d={recipe.dim}, "
                f"expected {instance.expectation.expected_class.value}")
    return instance


def _standard(recipe: InstanceRecipe) -> SynthesizedInstance:
    b = _Builder(recipe)
    cycle = recipe.violation is Violation.INDEFINITE_CYCLE
    b.add_continents(recipe.continents, recipe.nodes_per_continent)
    if recipe.continents > 1 and recipe.bridges < (1 if cycle else 2):
        raise InfeasibleRecipeError("at least two consistent bridges per continent pair are required")

    if cycle:
        for members in b.continents:
            u, v = members[1], members[2]
            b.add_edge(u, v, random_definite(b.d, b.rng, -b.consistent_sign(u, v)).entries)

    length = 1 if cycle else recipe.path_length
    extra = 1 if recipe.nbs_bridge and not cycle else 0
    if not cycle and recipe.continents > 1 and recipe.bridges * length + extra > b.d:
        raise InfeasibleRecipeError(
            f"{recipe.bridges} bridges of length {length}{' plus a balancing bridge' if extra else ''} "
            f"need d >= {recipe.bridges * length + extra}")

    shared_null = None
    if extra:
        shared_null = _column(random_orthogonal_frame(b.d, b.rng, recipe.nulls is NullFrames.AXIS), b.d - 1)

    for left in range(recipe.continents - 1):
        frame = b.frame()
        ends = b.endpoints(left, left + 1, recipe.bridges + extra) if length == 1 else \
            [(b.rng.choice(b.continents[left]), b.rng.choice(b.continents[left + 1]))
             for _ in range(recipe.bridges + extra)]
        col = 0
        for k in range(recipe.bridges):
            if cycle:
                nulls = [_column(frame, k % b.d)]
            else:
                nulls = [_column(frame, col + j) for j in range(length)]
                col += length
            u, v = ends[k]
            b.bridge(str(u), str(v), nulls)
        if extra:
            u, v = (str(x) for x in ends[-1])
            b.semidefinite(u, v, shared_null, sign=-b.consistent_sign(u, v))

    graph = b.graph()
    if cycle:
        failing = (1, 2) if recipe.continents > 1 else (1,)
        expectation = Expectation(SolutionKind.TRIVIAL, recipe.violation, failing)
    else:
        psi = shared_null if extra else np.eye(b.d)
        expectation = Expectation(b.bipartite_kind(), recipe.violation, (), b.gauge(), psi)
    return SynthesizedInstance(recipe, graph, expectation)


def _violation(recipe: InstanceRecipe) -> SynthesizedInstance:
    """Two continents joined by one bridging path of length 2 through a free node, plus bridges."""
    b = _Builder(recipe)
    b.add_continents(2, recipe.nodes_per_continent)
    frame = b.frame()
    f1, f2 = _column(frame, 0), _column(frame, 1)
    left, right = b.continents
    a, z = left[0], right[0]
    x = b.free_node()
    witness = None
    violation = recipe.violation

    if violation is Violation.CONDITION2:
        b.semidefinite(a, x, f1)
        b.semidefinite(x, z, f2)
        b.semidefinite(left[-1], right[-1], (f1 + f2) / np.sqrt(2))
        expectation = Expectation(SolutionKind.CLUSTER, violation, (2,))
    elif violation is Violation.CONDITION3:
        f3 = _column(frame, 2)
        b.semidefinite(a, x, f1)
        b.semidefinite(left[1], x, f1)
        b.semidefinite(x, z, f2)
        b.semidefinite(left[-1], right[-1], f3)
        expectation = Expectation(b.bipartite_kind(), violation, (3,), b.gauge(), np.eye(b.d))
    elif violation is Violation.CONDITION4:
        b.semidefinite(a, x, f1)
        b.semidefinite(x, z, f1)
        b.semidefinite(left[-1], right[-1], f2)
        graph_nodes = b.nodes
        witness = np.zeros(len(graph_nodes) * b.d)
        i = graph_nodes.index(x)
        witness[i * b.d:(i + 1) * b.d] = f1[:, 0]
        expectation = Expectation(SolutionKind.CLUSTER, violation, (1, 4), witness=witness)
    else:
        b.semidefinite(a, x, f1)
        b.semidefinite(x, z, f2, sign=-b.consistent_sign(x, z))
        ends = b.endpoints(0, 1, 2)
        for (u, v), null in zip(ends, (f1, f2)):
            b.semidefinite(str(u), str(v), null)
        witness = np.zeros(len(b.nodes) * b.d)
        ref = b.sigma[b.nodes[0]]
        for i, node in enumerate(b.nodes):
            s = ref * b.sigma[node] * (-1 if node == x else 1)
            witness[i * b.d:(i + 1) * b.d] = s * f1[:, 0]
        expectation = Expectation(SolutionKind.CLUSTER, violation, (1, 5), witness=witness)

    return SynthesizedInstance(recipe, b.graph(), expectation)
