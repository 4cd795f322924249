import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from src.models.graph import MatrixWeightedGraph  # noqa: E402

I2 = np.eye(2)
E1 = np.diag([1.0, 0.0])
E2 = np.diag([0.0, 1.0])


def two_continents(bridges, extra_nodes=()):
    """Continents {1,2} and {3,4} joined by identity weights, plus the given bridge edges."""
    nodes = ["1", "2", "3", "4", *extra_nodes]
    return MatrixWeightedGraph.from_edges(nodes, 2, [("1", "2", I2), ("3", "4", I2), *bridges])


@pytest.fixture
def g1() -> MatrixWeightedGraph:
    """Single positive bridge diag(1,0): cluster behaviour."""
    return two_continents([("2", "3", E1)])


@pytest.fixture
def g3() -> MatrixWeightedGraph:
    """Positive bridges with complementary null spaces: consensus."""
    return two_continents([("2", "3", E1), ("1", "4", E2)])


@pytest.fixture
def g4() -> MatrixWeightedGraph:
    """Negative bridges with complementary null spaces: bipartite consensus (+,+,-,-)."""
    return two_continents([("2", "3", -E1), ("1", "4", -E2)])


@pytest.fixture
def g5() -> MatrixWeightedGraph:
    """Path 2-5-3 whose two edges share the null space span{e2}."""
    return two_continents([("2", "5", E1), ("5", "3", E1)], extra_nodes=("5",))


@pytest.fixture
def isolated_logs(tmp_path, monkeypatch):
    """Send run logs of command-line tests to a temporary directory."""
    log_dir = tmp_path / "logs"
    monkeypatch.setenv("CONSENSUS_LOG_DIR", str(log_dir))
    return log_dir
