"""Random instances outside the synthesized structural family, for fuzzing the analysis."""
from typing import List, Tuple

import numpy as np

from src.generator.psd import as_rng, make_psd, random_definite, random_orthogonal_frame
from src.models.graph import MatrixWeightedGraph

Triple = Tuple[str, str, np.ndarray]


def _node_ids(n: int, offset: int = 0) -> List[str]:
    return [str(offset + i + 1) for i in range(n)]


def _random_weight(d: int, rng: np.random.Generator, sign: int, definite_prob: float) -> np.ndarray:
    if d == 1 or rng.random() < definite_prob:
        return random_definite(d, rng, sign).entries
    rank = int(rng.integers(1, d))
    frame = random_orthogonal_frame(d, rng)
    return make_psd(d, frame[:, rank:], rng, sign).entries


def _tree_pairs(nodes: List[str], rng: np.random.Generator) -> List[Tuple[str, str]]:
    """Random recursive tree: node i attaches to a uniformly drawn earlier node."""
    return [(nodes[int(rng.integers(0, i))], nodes[i]) for i in range(1, len(nodes))]


def _extra_pairs(nodes: List[str], taken, rng: np.random.Generator, prob: float) -> List[Tuple[str, str]]:
    pairs = []
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            if frozenset((u, v)) not in taken and rng.random() < prob:
                pairs.append((u, v))
    return pairs


def _component(nodes: List[str], d: int, rng: np.random.Generator, *, tree_definite: bool,
               definite_prob: float, extra_prob: float, signed: bool) -> List[Triple]:
    def sign() -> int:
        return int(rng.choice((1, -1))) if signed else 1

    tree = _tree_pairs(nodes, rng)
    edges = []
    for u, v in tree:
        weight = random_definite(d, rng, sign()).entries if tree_definite else \
            _random_weight(d, rng, sign(), definite_prob)
        edges.append((u, v, weight))
    taken = {frozenset(p) for p in tree}
    for u, v in _extra_pairs(nodes, taken, rng, extra_prob):
        edges.append((u, v, _random_weight(d, rng, sign(), definite_prob)))
    return edges


def random_connected_graph(n: int, d: int, seed=None, definite_prob: float = 0.5,
                           extra_prob: float = 0.3, signed: bool = True) -> MatrixWeightedGraph:
    """Connected signed graph with a mix of definite and semidefinite weights."""
    rng = as_rng(seed)
    nodes = _node_ids(n)
    edges = _component(nodes, d, rng, tree_definite=False, definite_prob=definite_prob,
                       extra_prob=extra_prob, signed=signed)
    return MatrixWeightedGraph.from_edges(nodes, d, edges)


def random_single_continent(n: int, d: int, seed=None, extra_prob: float = 0.3,
                            definite_prob: float = 0.5) -> MatrixWeightedGraph:
    """Signed graph spanned by a tree of definite edges, plus random extra edges."""
    rng = as_rng(seed)
    nodes = _node_ids(n)
    edges = _component(nodes, d, rng, tree_definite=True, definite_prob=definite_prob,
                       extra_prob=extra_prob, signed=True)
    return MatrixWeightedGraph.from_edges(nodes, d, edges)


def random_disconnected(n: int, d: int, seed=None, components: int = 2) -> MatrixWeightedGraph:
    """`components` random connected pieces (each with at least one node) and no edges between them."""
    rng = as_rng(seed)
    if components < 2 or n < components:
        raise ValueError(f"cannot split {n} nodes into {components} components")
    cuts = np.sort(rng.choice(np.arange(1, n), size=components - 1, replace=False))
    sizes = np.diff(np.concatenate(([0], cuts, [n])))
    edges, offset = [], 0
    for size in sizes:
        nodes = _node_ids(int(size), offset)
        edges += _component(nodes, d, rng, tree_definite=False, definite_prob=0.5,
                            extra_prob=0.3, signed=True)
        offset += int(size)
    return MatrixWeightedGraph.from_edges(_node_ids(n), d, edges)


def random_unsigned(n: int, d: int, seed=None, definite_prob: float = 0.5,
                    extra_prob: float = 0.3) -> MatrixWeightedGraph:
    """Connected graph whose weights are all positive (semi)definite."""
    return random_connected_graph(n, d, seed, definite_prob, extra_prob, signed=False)
