import csv
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.dynamics.integrator import default_horizon, energy, export_csv, integrate
from src.dynamics.outcome import classify_outcome, suggested_horizon
from src.exception.dynamics import NotSettledError, StepTooLargeError
from src.generator.random_graphs import random_connected_graph
from src.graph.builder import build_laplacian
from src.models.graph import MatrixWeightedGraph
from src.models.subspace import SolutionKind
from src.models.trajectory import IntegrationMethod
from src.spectral.null_space import asymptotic_state, decompose


@pytest.fixture
def x0():
    return np.random.default_rng(11).uniform(-1.0, 1.0, size=8)


class TestIntegrate:

    def test_exact_reaches_the_projection(self, g3, x0):
        laplacian = build_laplacian(g3)
        trajectory = integrate(laplacian, x0)
        assert_allclose(trajectory.terminal, asymptotic_state(laplacian, x0), atol=1e-9)
        assert len(trajectory) == 2001
        assert_allclose(trajectory.initial, x0)

    def test_default_horizon(self, g3):
        decomposition = decompose(build_laplacian(g3))
        assert default_horizon(decomposition) == pytest.approx(30.0 / decomposition.smallest_nonzero)

    def test_default_horizon_of_empty_graph(self):
        g = MatrixWeightedGraph.from_edges(["1", "2"], 2, [])
        assert default_horizon(decompose(build_laplacian(g))) == 1.0

    @pytest.mark.parametrize("method", ["rk4", "adaptive"])
    def test_numerical_methods_follow_the_exact_flow(self, g4, x0, method):
        laplacian = build_laplacian(g4)
        exact = integrate(laplacian, x0, horizon=1.0, steps=200)
        other = integrate(laplacian, x0, horizon=1.0, steps=200, method=method)
        assert other.method is IntegrationMethod(method)
        assert_allclose(other.states, exact.states, atol=1e-7)

    def test_rk4_step_bound(self, g3, x0):
        with pytest.raises(StepTooLargeError) as info:
            integrate(build_laplacian(g3), x0, horizon=10.0, steps=1, method="rk4")
        assert info.value.step == pytest.approx(10.0)
        assert "--steps" in info.value.message

    @pytest.mark.parametrize("kwargs", [{"horizon": 0.0}, {"horizon": -1.0}, {"steps": 0}])
    def test_invalid_arguments(self, g3, x0, kwargs):
        with pytest.raises(ValueError):
            integrate(build_laplacian(g3), x0, **kwargs)

    def test_wrong_initial_state(self, g3):
        with pytest.raises(ValueError):
            integrate(build_laplacian(g3), np.zeros(7))

    def test_unknown_method(self, g3, x0):
        with pytest.raises(ValueError):
            integrate(build_laplacian(g3), x0, method="euler")

    def test_energy_does_not_increase(self, g5):
        laplacian = build_laplacian(g5)
        x0 = np.random.default_rng(3).uniform(-1.0, 1.0, size=10)
        values = energy(integrate(laplacian, x0, steps=300), laplacian)
        assert values[0] > 0
        assert np.all(np.diff(values) <= 1e-12)


class TestClassifyOutcome:

    def test_consensus(self, g3, x0):
        laplacian = build_laplacian(g3)
        label = classify_outcome(integrate(laplacian, x0), laplacian, g3.node_ids)
        assert label.kind is SolutionKind.CONSENSUS
        assert label.signs == (1, 1, 1, 1)
        assert label.is_bipartite

    def test_bipartite(self, g4, x0):
        laplacian = build_laplacian(g4)
        label = classify_outcome(integrate(laplacian, x0), laplacian, g4.node_ids)
        assert label.kind is SolutionKind.BIPARTITE
        assert label.signs == (1, 1, -1, -1)

    def test_cluster_groups(self, g1, x0):
        laplacian = build_laplacian(g1)
        label = classify_outcome(integrate(laplacian, x0), laplacian, g1.node_ids)
        assert label.kind is SolutionKind.CLUSTER
        assert label.groups == (("1", "2"), ("3", "4"))

    def test_trivial(self):
        edges = [("1", "2", np.eye(2)), ("2", "3", np.eye(2)), ("1", "3", -np.eye(2))]
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, edges)
        laplacian = build_laplacian(g)
        x0 = np.array([1.0, -0.5, 0.2, 0.9, -0.4, 0.3])
        assert classify_outcome(integrate(laplacian, x0), laplacian).kind is SolutionKind.TRIVIAL

    def test_short_horizon_is_not_settled(self, g3, x0):
        laplacian = build_laplacian(g3)
        trajectory = integrate(laplacian, x0, horizon=1e-3, steps=10)
        with pytest.raises(NotSettledError) as info:
            classify_outcome(trajectory, laplacian)
        decomposition = decompose(laplacian)
        assert info.value.exit_code == 4
        assert info.value.suggested_horizon == pytest.approx(suggested_horizon(decomposition, 1e-3))
        assert info.value.suggested_horizon >= 10.0 / decomposition.smallest_nonzero


class TestExportCsv:

    def test_header_and_rows(self, g3, x0, tmp_path):
        trajectory = integrate(build_laplacian(g3), x0, steps=5)
        path = export_csv(trajectory, g3.node_ids, 2, tmp_path / "out" / "run.csv")
        with path.open(encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["t", "node1_1", "node1_2", "node2_1", "node2_2",
                           "node3_1", "node3_2", "node4_1", "node4_2"]
        assert len(rows) == 7
        assert float(rows[1][0]) == 0.0
        assert [float(v) for v in rows[1][1:]] == list(x0)


RK4_STEP_CAP = 100_000


class TestLimitState:

    @pytest.mark.parametrize("seed", range(200))
    def test_random_graphs_settle_on_the_projection(self, seed):
        rng = np.random.default_rng(seed)
        n, d = int(rng.integers(3, 6)), int(rng.integers(1, 3))
        g = random_connected_graph(n, d, seed=rng, extra_prob=0.3)
        laplacian = build_laplacian(g)
        decomposition = decompose(laplacian)
        x0 = rng.uniform(-1.0, 1.0, size=n * d)
        limit = asymptotic_state(laplacian, x0)
        horizon = default_horizon(decomposition)

        exact = integrate(laplacian, x0, decomposition=decomposition)
        assert np.max(np.abs(exact.terminal - limit)) <= 1e-6

        steps = max(200, math.ceil(horizon * decomposition.largest))
        if steps > RK4_STEP_CAP:
            pytest.skip(f"lambda_max / lambda_2 too large for a fixed-step run ({steps} steps)")
        rk4 = integrate(laplacian, x0, horizon=horizon, steps=steps, method="rk4", decomposition=decomposition)
        assert np.max(np.abs(rk4.terminal - limit)) <= 1e-6
