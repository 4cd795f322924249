import json

import numpy as np
import pytest

from src.cli import describe_graph, main
from src.graph.builder import to_document
from src.models.graph import MatrixWeightedGraph
from src.writer.report_writer import write_graph_document


@pytest.fixture
def workspace(tmp_path, isolated_logs):
    return tmp_path


def write(graph, folder, name):
    return str(write_graph_document(graph, folder / f"{name}.json"))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


class TestAnalyze:

    def test_report_for_consensus_graph(self, workspace, g3, capsys):
        source = write(g3, workspace, "g3")
        out = workspace / "out"
        assert main(["analyze", source, "--out", str(out)]) == 0
        report_path = out / "g3.report.json"
        assert capsys.readouterr().out.strip() == str(report_path)

        report = load(report_path)
        assert list(report)[:4] == ["source", "verdict_theorem_3_8", "verdict_corollary_3_11",
                                    "verdict_theorem_3_12"]
        assert report["verdict_theorem_3_12"] == "holds"
        assert report["verdict_details"]["verdict_theorem_3_12"]["necessary_and_sufficient"] is True
        assert report["predicted"] == "Consensus"
        assert report["failing_conditions"] == []
        assert report["nbs"]["unique"] is True
        assert report["pairs"][0]["S_I_dim"] == 0
        assert report["config"]["tol_rank"] == 1e-9

    def test_reports_are_reproducible(self, workspace, g4):
        source = write(g4, workspace, "g4")
        main(["analyze", source, "--out", str(workspace / "a")])
        main(["analyze", source, "--out", str(workspace / "b")])
        first = (workspace / "a" / "g4.report.json").read_bytes()
        assert first == (workspace / "b" / "g4.report.json").read_bytes()
        assert load(workspace / "a" / "g4.report.json")["predicted_class"]["sigma"] == [1, 1, -1, -1]

    def test_human_format(self, workspace, g5, capsys):
        source = write(g5, workspace, "g5")
        assert main(["analyze", source, "--out", str(workspace), "--format", "human"]) == 0
        text = capsys.readouterr().out
        assert "predicted: NotBipartite" in text
        assert "witness for condition 4" in text
        assert (workspace / "g5.report.json").exists()

    def test_name_applies_to_a_single_input(self, workspace, g3):
        source = write(g3, workspace, "g3")
        assert main(["analyze", source, "--out", str(workspace), "--name", "bridges"]) == 0
        assert (workspace / "bridges.report.json").exists()

    def test_disconnected_graph_is_a_successful_analysis(self, workspace):
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 2, [("1", "2", np.eye(2))])
        source = write(g, workspace, "split")
        assert main(["analyze", source, "--out", str(workspace)]) == 0
        report = load(workspace / "split.report.json")
        assert report["connected"] is False
        assert {report[k] for k in ("verdict_theorem_3_8", "verdict_corollary_3_11",
                                    "verdict_theorem_3_12")} == {"not_applicable"}
        assert report["predicted"] == "NotBipartite"

    @pytest.mark.parametrize("content", [
        b"{",
        b"[]",
        b"\xff\xfe{}",
        json.dumps({"d": 2, "nodes": ["1", "2"], "edges": [{"u": "1", "v": "1", "w": [[1, 0], [0, 1]]}]}).encode(),
        json.dumps({"d": 2, "nodes": ["1", "2"], "edges": [{"u": "1", "v": "2", "w": [[1, 0], [0, -1]]}]}).encode(),
        json.dumps({"d": 2, "nodes": ["1", "2"], "edges": [], "extra": 1}).encode(),
    ])
    def test_malformed_documents_exit_2(self, workspace, content, capsys):
        path = workspace / "bad.json"
        path.write_bytes(content)
        assert main(["analyze", str(path), "--out", str(workspace)]) == 2
        assert f"error: {path}:" in capsys.readouterr().err
        assert not (workspace / "bad.report.json").exists()

    def test_batch_keeps_going_after_a_failure(self, workspace, g3, g4, capsys):
        first = write(g3, workspace, "first")
        third = write(g4, workspace, "third")
        missing = str(workspace / "missing.json")
        assert main(["analyze", first, missing, third, "--out", str(workspace / "out")]) == 2
        assert (workspace / "out" / "first.report.json").exists()
        assert (workspace / "out" / "third.report.json").exists()
        captured = capsys.readouterr()
        assert "missing.json" in captured.err
        assert captured.out.splitlines() == [str(workspace / "out" / "first.report.json"),
                                             str(workspace / "out" / "third.report.json")]

    def test_budget_exceeded_exits_3(self, workspace, g5):
        source = write(g5, workspace, "g5")
        assert main(["analyze", source, "--out", str(workspace), "--partition-cap", "2"]) == 3

    def test_run_summary_is_appended(self, workspace, isolated_logs, g3):
        source = write(g3, workspace, "g3")
        main(["analyze", source, "--out", str(workspace)])
        summary = (isolated_logs / "run_summary.txt").read_text(encoding="utf-8")
        assert "analyze: 1 instances written" in summary


class TestSimulate:

    def test_bipartite_outcome(self, workspace, g4):
        source = write(g4, workspace, "g4")
        assert main(["simulate", source, "--out", str(workspace), "--seed", "3"]) == 0
        outcome = load(workspace / "g4.outcome.json")
        assert outcome["outcome"] == "BipartiteConsensus"
        assert outcome["signs"] == [1, 1, -1, -1]
        assert outcome["agrees"] is True
        assert outcome["seed"] == 3
        assert outcome["agreement_residual"] < 1e-6
        header = (workspace / "g4.trajectory.csv").read_text(encoding="utf-8").splitlines()[0]
        assert header == "t,node1_1,node1_2,node2_1,node2_2,node3_1,node3_2,node4_1,node4_2"

    def test_cluster_outcome(self, workspace, g1):
        source = write(g1, workspace, "g1")
        assert main(["simulate", source, "--out", str(workspace), "--steps", "400"]) == 0
        outcome = load(workspace / "g1.outcome.json")
        assert outcome["outcome"] == "Cluster"
        assert outcome["spectral_prediction"]["class"] == "Cluster"
        assert outcome["stamps"] == 401

    def test_seed_fixes_the_initial_state(self, workspace, g3):
        source = write(g3, workspace, "g3")
        main(["simulate", source, "--out", str(workspace / "a"), "--seed", "9"])
        main(["simulate", source, "--out", str(workspace / "b"), "--seed", "9"])
        assert (workspace / "a" / "g3.outcome.json").read_bytes() == (workspace / "b" / "g3.outcome.json").read_bytes()

    @pytest.mark.parametrize("horizon", ["0", "-2"])
    def test_non_positive_horizon_is_a_usage_error(self, workspace, g3, horizon):
        source = write(g3, workspace, "g3")
        with pytest.raises(SystemExit) as info:
            main(["simulate", source, "--horizon", horizon])
        assert info.value.code == 2

    def test_short_horizon_exits_4(self, workspace, g3, capsys):
        source = write(g3, workspace, "g3")
        assert main(["simulate", source, "--out", str(workspace), "--horizon", "0.001", "--steps", "10"]) == 4
        assert "--horizon" in capsys.readouterr().err

    def test_unstable_rk4_step_exits_2(self, workspace, g3):
        source = write(g3, workspace, "g3")
        assert main(["simulate", source, "--out", str(workspace), "--method", "rk4",
                     "--horizon", "10", "--steps", "1"]) == 2


class TestGen:

    def test_instance_and_expectation(self, workspace, capsys):
        assert main(["gen", "--seed", "7", "--violate", "condition4", "--out", str(workspace)]) == 0
        graph_path = workspace / "instance_7.json"
        expect_path = workspace / "instance_7.expect.json"
        assert capsys.readouterr().out.splitlines() == [str(graph_path), str(expect_path)]
        expectation = load(expect_path)
        assert expectation["failing_conditions"] == [1, 4]
        assert expectation["expected_class"] == "Cluster"
        assert expectation["recipe"]["seed"] == 7
        assert len(expectation["witness"]) == 2 * len(load(graph_path)["nodes"])

        assert main(["analyze", str(graph_path), "--out", str(workspace)]) == 0
        report = load(workspace / "instance_7.report.json")
        assert report["failing_conditions"] == [1, 4]
        assert "null_independence" in report["witnesses"]

    def test_same_seed_same_bytes(self, workspace):
        main(["gen", "--seed", "11", "--signed", "--continents", "3", "--out", str(workspace / "a")])
        main(["gen", "--seed", "11", "--signed", "--continents", "3", "--out", str(workspace / "b")])
        for name in ("instance_11.json", "instance_11.expect.json"):
            assert (workspace / "a" / name).read_bytes() == (workspace / "b" / name).read_bytes()

    def test_named_output(self, workspace):
        assert main(["gen", "--name", "cycle", "--violate", "indefinite-cycle", "--nodes-per-continent", "3",
                     "--bridges", "1", "--out", str(workspace)]) == 0
        assert load(workspace / "cycle.expect.json")["expected_class"] == "Trivial"

    def test_infeasible_recipe_exits_2(self, workspace, capsys):
        assert main(["gen", "--violate", "condition3", "--dim", "2", "--out", str(workspace)]) == 2
        assert "infeasible recipe" in capsys.readouterr().err
        assert not list(workspace.glob("instance_*.json"))


class TestValidate:

    def test_summary_line(self, workspace, g5, capsys):
        source = write(g5, workspace, "g5")
        assert main(["validate", source]) == 0
        line = capsys.readouterr().out.strip()
        assert line.startswith(f"{source}: N=5, d=2")
        assert "2 positive definite" in line and "2 positive semidefinite" in line
        assert line.endswith("connected")

    def test_describe_disconnected(self):
        g = MatrixWeightedGraph.from_edges(["1", "2", "3"], 1, [("1", "2", -np.eye(1))])
        assert describe_graph(g) == "N=3, d=1, edges: 1 negative definite; disconnected"

    def test_invalid_document(self, workspace):
        path = workspace / "g.json"
        path.write_text(json.dumps({**to_document(
            MatrixWeightedGraph.from_edges(["1", "2"], 2, [("1", "2", np.eye(2))])), "d": 3}), encoding="utf-8")
        assert main(["validate", str(path)]) == 2

    def test_binary_document_keeps_batch_going(self, workspace, g3, capsys):
        good = write(g3, workspace, "g3")
        binary = workspace / "binary.json"
        binary.write_bytes(b"\xff\xfe{}")
        assert main(["validate", str(binary), good]) == 2
        captured = capsys.readouterr()
        assert f"error: {binary}:" in captured.err
        assert "not UTF-8" in captured.err
        assert captured.out.startswith(f"{good}: N=4")
