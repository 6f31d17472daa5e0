"""CLI surface: exit codes, manifests, figures next to tables."""

import json
from pathlib import Path

import pytest

from quarterdense.cli import main
from quarterdense.manifest import RunManifest


def run(tmp_path, *args):
    return main(["--out-dir", str(tmp_path), *args])


class TestExitCodes:
    def test_verify_pass(self, tmp_path):
        assert run(tmp_path, "verify", "prop14", "--s", "4") == 0

    def test_verify_capacity(self, tmp_path):
        assert run(tmp_path, "verify", "prop14", "--s", "9") == 3

    def test_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(tmp_path, "verify", "nonsense")
        assert exc.value.code == 2

    def test_missing_config_is_input_error(self, tmp_path):
        assert run(tmp_path, "embed", str(tmp_path / "nope.json")) == 4

    def test_malformed_curves_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(tmp_path, "geometry", "crossings", "--input", str(bad)) == 4


class TestSubcommands:
    def test_enumerate_patterns(self, tmp_path):
        assert run(tmp_path, "enumerate-patterns", "--t", "5", "--max-vertices", "8") == 0
        pats = json.loads((tmp_path / "patterns-t5-max8.json").read_text())
        assert len(pats) == 12

    def test_admissible_and_minimize(self, tmp_path):
        assert run(tmp_path, "admissible", "--graph6", "D~{") == 0
        obj = json.loads((tmp_path / "admissible.json").read_text())
        assert obj["admissible"] is True
        assert run(tmp_path, "minimize-phi", "--graph6", "D~{") == 0
        res = json.loads((tmp_path / "minimize-phi.json").read_text())
        assert res["min_phi"] == "3/5"

    def test_reduce_weights(self, tmp_path):
        wf = tmp_path / "w.json"
        wf.write_text(json.dumps(
            {"k": 3, "w": {"0,1": "3/10", "0,2": "3/10", "1,2": "3/10"}}
        ))
        assert run(tmp_path, "reduce-weights", "--input", str(wf)) == 0
        out = json.loads((tmp_path / "reduce-weights.json").read_text())
        assert out["quotient"]["phi_weight"] == "1/3"

    def test_embed_row_count_and_figure(self, tmp_path):
        cfg = tmp_path / "embed.json"
        cfg.write_text(json.dumps({
            "h": "K4", "block_size": 1, "weights": "1/2", "p_in": "1/4",
            "eps1": "1/5", "lambda": "1/20", "seeds": {"count": 5},
        }))
        assert run(tmp_path, "embed", str(cfg)) == 0
        lines = (tmp_path / "embed.csv").read_text().strip().splitlines()
        assert len(lines) == 6  # header + one row per seed
        assert (tmp_path / "embed.png").exists()
        assert (tmp_path / "embed.manifest.json").exists()

    def test_geometry_pipelines(self, tmp_path):
        curves = tmp_path / "x.json"
        curves.write_text(json.dumps(
            [[[[0, 1], [0, 1]], [[1, 1], [1, 1]]], [[[0, 1], [1, 1]], [[1, 1], [0, 1]]]]
        ))
        assert run(tmp_path, "geometry", "crossings", "--input", str(curves)) == 0
        xs = json.loads((tmp_path / "crossings.json").read_text())
        assert len(xs) == 1 and xs[0]["point"] == [[1, 2], [1, 2]]
        assert run(tmp_path, "geometry", "graph", "--input", str(curves)) == 0
        assert (tmp_path / "intersection-graph.g6").read_text().strip() == "A_"
        assert run(tmp_path, "geometry", "separator", "--input", str(curves)) == 0

    def test_disjoint_graph_is_empty_graph6(self, tmp_path):
        curves = tmp_path / "d.json"
        curves.write_text(json.dumps(
            [[[[0, 1], [0, 1]], [[1, 1], [0, 1]]], [[[0, 1], [2, 1]], [[1, 1], [2, 1]]]]
        ))
        assert run(tmp_path, "geometry", "graph", "--input", str(curves)) == 0
        assert (tmp_path / "intersection-graph.g6").read_text().strip() == "A?"

    def test_extremal_table_and_figure(self, tmp_path):
        assert run(tmp_path, "extremal", "--ns", "12,16", "--seeds", "0,1") == 0
        lines = (tmp_path / "extremal.csv").read_text().strip().splitlines()
        assert len(lines) == 5
        assert lines[0] == "n,seed,size,mode,log2_n"
        assert (tmp_path / "extremal.png").exists()


class TestManifests:
    def test_round_trip(self, tmp_path):
        assert run(tmp_path, "extremal", "--ns", "12", "--seeds", "3,4") == 0
        man = RunManifest.load(tmp_path / "extremal.manifest.json")
        assert man.subcommand == "extremal"
        assert man.seeds == [3, 4]
        again = RunManifest.load(tmp_path / "extremal.manifest.json")
        assert again.to_json() == man.to_json()

    def test_replay_reproduces_outputs(self, tmp_path):
        first = tmp_path / "a"
        second = tmp_path / "b"
        assert main(["--out-dir", str(first), "extremal", "--ns", "12,16", "--seeds", "5,6"]) == 0
        man = RunManifest.load(first / "extremal.manifest.json")
        argv = list(man.argv)
        argv[argv.index(str(first))] = str(second)
        assert main(argv) == 0
        assert (first / "extremal.csv").read_bytes() == (second / "extremal.csv").read_bytes()

    def test_input_hashes_recorded(self, tmp_path):
        wf = tmp_path / "w.json"
        wf.write_text(json.dumps({"k": 3, "w": {"0,1": "1/2", "0,2": "1/2", "1,2": "1/2"}}))
        assert run(tmp_path, "reduce-weights", "--input", str(wf)) == 0
        man = RunManifest.load(tmp_path / "reduce-weights.manifest.json")
        assert str(wf) in man.input_hashes
