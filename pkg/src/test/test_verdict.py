import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.balance.nbs import enumerate_nbs
from src.conditions.verdict import full_verdict
from src.conditions.witness import condition4_witness, condition5_witness
from src.config import AnalysisConfig
from src.dynamics.integrator import integrate
from src.dynamics.outcome import classify_outcome
from src.exception.analysis import BudgetExceededError
from src.generator.psd import make_psd, random_definite, random_orthogonal_frame
from src.generator.random_graphs import (
    random_connected_graph,
    random_disconnected,
    random_single_continent,
    random_unsigned,
)
from src.graph.builder import build_laplacian, lift_unsigned, to_document
from src.models.conditions import Condition, Criterion, Prediction, Status
from src.models.graph import MatrixWeightedGraph
from src.models.subspace import SolutionKind, SubspaceBasis
from src.spectral.classification import classify_solution_space
from src.spectral.null_space import decompose, null_space_basis, verify_null_vector
from src.topology.continents import detect_continents
from src.topology.paths import enumerate_connecting_paths

I2 = np.eye(2)
E1 = np.diag([1.0, 0.0])
E2 = np.diag([0.0, 1.0])


def spectral_class(graph):
    basis = null_space_basis(build_laplacian(graph))
    return classify_solution_space(basis, graph.n, graph.dim, node_ids=graph.node_ids)


class TestWitnesses:

    def test_repeated_null_direction_gives_interior_witness(self, g5):
        continents = detect_continents(g5)
        (path,) = enumerate_connecting_paths(g5, continents, 0, 1).paths
        x = condition4_witness(g5, path)
        assert x is not None
        assert verify_null_vector(g5, x).passes
        blocks = x.reshape(g5.n, 2)
        assert_allclose(blocks[:4], 0.0, atol=1e-14)
        assert abs(blocks[4, 0]) < 1e-14 and abs(blocks[4, 1]) > 0

    def test_independent_nulls_give_no_witness(self, g3):
        continents = detect_continents(g3)
        for path in enumerate_connecting_paths(g3, continents, 0, 1).paths:
            assert condition4_witness(g3, path) is None

    def test_isolation_witness_requires_a_balancing_edge(self, g3):
        continents = detect_continents(g3)
        report = full_verdict(g3)
        path = enumerate_connecting_paths(g3, continents, 0, 1).paths[0]
        full = SubspaceBasis.full(2)
        assert condition5_witness(g3, path, report.reference_nbs, 0, full, full) is None


class TestFullVerdict:

    def test_complementary_bridges_reach_consensus(self, g3):
        report = full_verdict(g3)
        assert report.failing() == []
        assert report.nbs.unique
        assert report.verdict(Criterion.EDGE_BRIDGES) is Status.HOLDS
        assert report.verdicts[Criterion.EDGE_BRIDGES].necessary_and_sufficient
        assert report.verdict(Criterion.DISJOINT_PATHS) is Status.HOLDS
        assert report.verdict(Criterion.PRIMARY_PATHS) is Status.HOLDS
        assert report.prediction is Prediction.CONSENSUS
        assert report.predicted_class.kind is SolutionKind.CONSENSUS
        assert report.predicted_class.null_dim == 2

    def test_negative_bridges_reach_bipartite_consensus(self, g4):
        report = full_verdict(g4)
        assert report.failing() == []
        assert report.prediction is Prediction.BIPARTITE
        assert report.predicted_class.gauge.sigma == (1, 1, -1, -1)
        observed = spectral_class(g4)
        assert observed.kind is SolutionKind.BIPARTITE
        assert observed.gauge.sigma == (1, 1, -1, -1)

    def test_single_bridge_has_two_balancing_sets(self, g1):
        report = full_verdict(g1)
        assert len(report.nbs) == 2
        assert report.failing() == [1, 2]
        assert report.verdict(Criterion.EDGE_BRIDGES) is Status.FAILS
        assert report.verdicts[Criterion.EDGE_BRIDGES].failed_conditions == [
            Condition.UNIQUE_NBS, Condition.PATH_BALANCE]
        assert report.prediction is Prediction.NOT_BIPARTITE
        assert spectral_class(g1).kind is SolutionKind.CLUSTER

    def test_free_node_path_with_repeated_null(self, g5):
        report = full_verdict(g5)
        assert report.free_nodes == ["5"]
        assert report.failing() == [1, 2, 4]
        assert report.verdict(Criterion.EDGE_BRIDGES) is Status.NOT_APPLICABLE
        assert report.verdict(Criterion.DISJOINT_PATHS) is Status.FAILS
        assert Condition.NULL_INDEPENDENCE in report.witnesses
        assert report.prediction is Prediction.NOT_BIPARTITE
        assert report.predicted_class is None

    @pytest.mark.parametrize("sign, sigma", [(1, (1, 1, 1)), (-1, (1, 1, -1))])
    def test_singleton_joined_by_direct_edges_is_decided(self, sign, sigma):
        edges = [("1", "2", I2), ("1", "3", sign * E1), ("2", "3", sign * E2)]
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, edges)
        report = full_verdict(g)
        assert report.free_nodes == []
        assert report.uncovered == {"edges": [], "free_nodes": []}
        assert report.failing() == []
        assert report.verdict(Criterion.EDGE_BRIDGES) is Status.HOLDS
        assert report.verdicts[Criterion.EDGE_BRIDGES].necessary_and_sufficient
        observed = spectral_class(g)
        assert observed.gauge.sigma == sigma
        if sign == 1:
            assert report.prediction is Prediction.CONSENSUS
            assert observed.kind is SolutionKind.CONSENSUS
        else:
            assert report.prediction is Prediction.BIPARTITE
            assert observed.kind is SolutionKind.BIPARTITE

    def test_disconnected_graph(self):
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, [("1", "2", I2)])
        report = full_verdict(g)
        assert not report.connected
        assert all(v.status is Status.NOT_APPLICABLE for v in report.verdicts.values())
        assert "disconnected" in report.verdicts[Criterion.DISJOINT_PATHS].note
        assert report.prediction is Prediction.NOT_BIPARTITE

    def test_conflicting_cycle_is_trivial(self):
        edges = [("1", "2", I2), ("2", "3", I2), ("1", "3", -I2)]
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, edges)
        report = full_verdict(g)
        assert not report.nbs.exists
        assert report.prediction is Prediction.TRIVIAL
        assert report.predicted_class.kind is SolutionKind.TRIVIAL
        assert spectral_class(g).kind is SolutionKind.TRIVIAL

    def test_config_budgets_are_used(self, g5):
        with pytest.raises(BudgetExceededError):
            full_verdict(g5, AnalysisConfig(partition_cap=2))

    @pytest.mark.parametrize("seed", range(12))
    def test_positive_prediction_agrees_with_spectrum(self, seed):
        g = random_connected_graph(6, 2, seed=seed, extra_prob=0.2)
        report = full_verdict(g)
        if report.prediction in (Prediction.CONSENSUS, Prediction.BIPARTITE):
            observed = spectral_class(g)
            assert observed.kind.value == report.prediction.value
            assert observed.null_dim == report.predicted_class.null_dim


BIPARTITE_KINDS = (SolutionKind.CONSENSUS, SolutionKind.BIPARTITE)


def two_tree_continents(seed):
    """Two random definite trees joined only by direct semidefinite bridges drawn from one frame."""
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 4))
    sizes = [int(rng.integers(2, 5)) for _ in range(2)]
    nodes = [str(i + 1) for i in range(sum(sizes))]
    left, right = nodes[:sizes[0]], nodes[sizes[0]:]
    edges = []
    for part in (left, right):
        for i in range(1, len(part)):
            sign = int(rng.choice((1, -1)))
            edges.append((part[int(rng.integers(0, i))], part[i], random_definite(d, rng, sign).entries))
    frame = random_orthogonal_frame(d, rng)
    pairs = [(u, v) for u in left for v in right]
    count = int(rng.integers(1, min(len(pairs), d + 1) + 1))
    for k in rng.choice(len(pairs), size=count, replace=False):
        u, v = pairs[int(k)]
        columns = np.sort(rng.permutation(d)[:int(rng.integers(1, d))])
        weight = make_psd(d, frame[:, columns], rng, int(rng.choice((1, -1))))
        edges.append((u, v, weight.entries))
    return MatrixWeightedGraph.from_edges(nodes, d, edges)


class TestSingleContinent:

    @pytest.mark.parametrize("seed", range(100))
    def test_unique_nbs_iff_bipartite(self, seed):
        rng = np.random.default_rng(seed)
        g = random_single_continent(int(rng.integers(3, 7)), int(rng.integers(1, 4)), seed=rng)
        enumeration = enumerate_nbs(g)
        observed = spectral_class(g)
        assert len(enumeration) <= 1
        assert enumeration.unique == (observed.kind in BIPARTITE_KINDS)
        if enumeration.unique:
            assert observed.gauge.sigma == enumeration.sets[0].gauge.sigma
            assert observed.null_dim == enumeration.sets[0].null_basis.rank
        else:
            assert observed.kind is SolutionKind.TRIVIAL
        assert full_verdict(g).prediction.value == observed.kind.value


class TestEdgeBridges:

    @pytest.mark.parametrize("seed", range(100))
    def test_criterion_decides_direct_bridges(self, seed):
        g = two_tree_continents(seed)
        report = full_verdict(g)
        edge = report.verdicts[Criterion.EDGE_BRIDGES]
        assert len(report.continents) == 2 and report.free_nodes == []
        assert edge.status is not Status.NOT_APPLICABLE
        holds = edge.status is Status.HOLDS
        observed = spectral_class(g)
        assert holds == (observed.kind in BIPARTITE_KINDS)
        if holds:
            assert report.predicted_class.kind is observed.kind
            assert report.predicted_class.gauge.sigma == observed.gauge.sigma

        laplacian = build_laplacian(g)
        decomposition = decompose(laplacian)
        x0 = np.random.default_rng(seed + 500).uniform(-1.0, 1.0, size=g.n * g.dim)
        label = classify_outcome(integrate(laplacian, x0, decomposition=decomposition), laplacian,
                                 g.node_ids, decomposition=decomposition)
        if holds:
            assert label.kind is observed.kind
            assert label.signs == observed.gauge.sigma
        else:
            assert label.kind not in BIPARTITE_KINDS


class TestBalancingSetUniqueness:

    @pytest.mark.parametrize("seed", range(100))
    def test_bipartite_spectrum_has_one_matching_nbs(self, seed):
        rng = np.random.default_rng(seed)
        g = random_connected_graph(int(rng.integers(3, 8)), int(rng.integers(1, 4)), seed=rng,
                                   definite_prob=0.6, extra_prob=0.2)
        observed = spectral_class(g)
        if observed.kind not in BIPARTITE_KINDS:
            return
        enumeration = enumerate_nbs(g)
        assert enumeration.unique
        assert enumeration.sets[0].gauge.sigma == observed.gauge.sigma
        assert enumeration.sets[0].partition.is_trivial == (observed.kind is SolutionKind.CONSENSUS)


class TestSpecialCases:

    @pytest.mark.parametrize("seed", range(50))
    def test_disconnected_graphs_are_never_bipartite(self, seed):
        rng = np.random.default_rng(seed)
        g = random_disconnected(int(rng.integers(2, 9)), int(rng.integers(1, 4)), seed=rng)
        assert spectral_class(g).kind not in BIPARTITE_KINDS
        assert full_verdict(g).prediction is Prediction.NOT_BIPARTITE

    @pytest.mark.parametrize("seed", range(50))
    def test_unsigned_tree_is_consensus_iff_trivial_partition_is_unique(self, seed):
        rng = np.random.default_rng(seed)
        g = lift_unsigned(to_document(random_unsigned(int(rng.integers(2, 8)), int(rng.integers(1, 4)),
                                                      seed=rng, extra_prob=0.0)))
        enumeration = enumerate_nbs(g)
        only_consensus = enumeration.unique and enumeration.sets[0].partition.is_trivial
        assert only_consensus == (spectral_class(g).kind is SolutionKind.CONSENSUS)

    @pytest.mark.parametrize("seed", range(50))
    def test_unsigned_consensus_has_only_the_trivial_partition(self, seed):
        rng = np.random.default_rng(seed)
        g = lift_unsigned(to_document(random_unsigned(int(rng.integers(2, 8)), int(rng.integers(1, 4)), seed=rng)))
        enumeration = enumerate_nbs(g)
        assert enumeration.exists and enumeration.sets[0].partition.is_trivial
        observed = spectral_class(g)
        assert observed.kind in (SolutionKind.CONSENSUS, SolutionKind.CLUSTER)
        if observed.kind is SolutionKind.CONSENSUS:
            assert enumeration.unique

    def test_unsigned_semidefinite_cycle_clusters_with_one_balancing_set(self):
        half = np.full((2, 2), 0.5)
        g = lift_unsigned(MatrixWeightedGraph.from_edges(["1", "2", "3"], 2,
                                                         [("1", "2", E1), ("2", "3", E2), ("1", "3", half)]))
        enumeration = enumerate_nbs(g)
        assert enumeration.unique and enumeration.sets[0].partition.is_trivial
        observed = spectral_class(g)
        assert observed.kind is SolutionKind.CLUSTER
        assert observed.null_dim == 3
        assert full_verdict(g).prediction is Prediction.NOT_BIPARTITE
