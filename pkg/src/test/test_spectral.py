import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.graph.builder import build_laplacian
from src.models.graph import GaugeAssignment, MatrixWeightedGraph
from src.models.subspace import SolutionKind, SubspaceBasis
from src.spectral.classification import bipartite_subspace, classify_solution_space
from src.spectral.null_space import asymptotic_state, decompose, null_space_basis, verify_null_vector


def classify(graph):
    return classify_solution_space(null_space_basis(build_laplacian(graph)), graph.n, graph.dim,
                                   node_ids=graph.node_ids)


class TestDecomposition:

    def test_consensus_null_rank(self, g3):
        decomposition = decompose(build_laplacian(g3))
        assert decomposition.null_rank == 2
        assert decomposition.smallest_nonzero > 0
        assert decomposition.reconstruction_residual(build_laplacian(g3).blocks) < 1e-10

    def test_eigenvalues_are_sorted(self, g4):
        eigenvalues = decompose(build_laplacian(g4)).eigenvalues
        assert np.all(np.diff(eigenvalues) >= -1e-12)

    def test_null_basis_is_orthonormal(self, g1):
        basis = null_space_basis(build_laplacian(g1))
        assert basis.rank == 3
        assert_allclose(basis.columns.T @ basis.columns, np.eye(3), atol=1e-10)


class TestAsymptoticState:

    def test_consensus_limit_is_the_average(self, g3):
        x0 = np.arange(8, dtype=float)
        limit = asymptotic_state(build_laplacian(g3), x0)
        expected = np.tile(x0.reshape(4, 2).mean(axis=0), 4)
        assert_allclose(limit, expected, atol=1e-10)

    def test_bipartite_limit_is_the_gauged_average(self, g4):
        x0 = np.array([1.0, 2.0, -3.0, 0.5, 4.0, -1.0, 0.0, 2.0])
        sigma = np.array([1, 1, -1, -1], dtype=float)
        gauged = (x0.reshape(4, 2) * sigma[:, None]).mean(axis=0)
        limit = asymptotic_state(build_laplacian(g4), x0)
        assert_allclose(limit.reshape(4, 2), np.outer(sigma, gauged), atol=1e-10)

    def test_wrong_length(self, g3):
        with pytest.raises(ValueError):
            asymptotic_state(build_laplacian(g3), np.zeros(3))


class TestVerifyNullVector:

    def test_consensus_vector_passes(self, g3):
        assert verify_null_vector(g3, np.tile([0.4, -1.0], 4)).passes

    def test_failing_edges_are_named(self, g3):
        x = np.zeros(8)
        x[0] = 1.0
        report = verify_null_vector(g3, x)
        assert not report.passes
        assert ("1", "2") in report.failing_edges()
        assert ("2", "3") not in report.failing_edges()

    def test_wrong_length(self, g3):
        with pytest.raises(ValueError):
            verify_null_vector(g3, np.zeros(5))


class TestClassification:

    def test_consensus(self, g3):
        solution = classify(g3)
        assert solution.kind is SolutionKind.CONSENSUS
        assert solution.gauge.is_identity
        assert solution.psi.is_full

    def test_bipartite(self, g4):
        solution = classify(g4)
        assert solution.kind is SolutionKind.BIPARTITE
        assert solution.gauge.sigma == (1, 1, -1, -1)
        assert solution.is_bipartite

    def test_cluster_when_null_space_is_too_large(self, g1):
        assert classify(g1).kind is SolutionKind.CLUSTER

    def test_trivial(self):
        edges = [("1", "2", np.eye(2)), ("2", "3", np.eye(2)), ("1", "3", -np.eye(2))]
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, edges)
        assert classify(g).kind is SolutionKind.TRIVIAL
        assert classify(g).null_dim == 0

    def test_partial_consensus_subspace(self):
        # e2 components are unconstrained
        e1 = np.diag([1.0, 0.0])
        edges = [("1", "2", e1), ("2", "3", -e1)]
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, edges)
        solution = classify(g)
        assert solution.kind is SolutionKind.CLUSTER

    def test_gauge_form_recognised_with_rotated_psi(self):
        rng = np.random.default_rng(4)
        psi = SubspaceBasis(np.linalg.qr(rng.standard_normal((3, 1)))[0])
        gauge = GaugeAssignment((1, -1, 1, -1))
        basis = bipartite_subspace(gauge, psi)
        solution = classify_solution_space(basis, 4, 3)
        assert solution.kind is SolutionKind.BIPARTITE
        assert solution.gauge.sigma == (1, -1, 1, -1)
        assert solution.psi.same_as(psi)

    def test_zero_block_is_a_cluster(self):
        basis = SubspaceBasis(np.array([[1.0], [0.0], [0.0], [0.0]]))
        assert classify_solution_space(basis, 2, 2).kind is SolutionKind.CLUSTER
