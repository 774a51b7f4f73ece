import json
import os

import pytest

from vertrel.cli import main
from vertrel.graph import build_graph
from vertrel.graphio import write_edge_list, write_graph6

from oracles import CYCLE5, PATH3, complete_edges


@pytest.fixture()
def c5_file(tmp_path):
    path = tmp_path / "c5.el"
    write_edge_list(build_graph(5, CYCLE5), path)
    return str(path)


@pytest.fixture()
def dataset(tmp_path):
    out = tmp_path / "ds"
    code = main(
        [
            "generate", "--out", str(out), "--orders", "8",
            "--er", "6", "--ba", "3", "--ws", "3", "--seed", "42",
        ]
    )
    assert code == 0
    return str(out)


def read_body(path):
    """CSV body without the # header comments."""
    with open(path) as fh:
        return [ln for ln in fh if not ln.startswith("#")]


class TestGenerate:
    def test_reproducible(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        args = ["generate", "--orders", "8", "--er", "4", "--ba", "2", "--ws", "2",
                "--seed", "7"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        files_a = sorted(p.name for p in a.iterdir())
        assert files_a == sorted(p.name for p in b.iterdir())
        for name in files_a:
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_seed_required(self, tmp_path, capsys):
        code = main(["generate", "--out", str(tmp_path / "x"), "--orders", "8", "--er", "2"])
        assert code == 1
        assert "--seed" in capsys.readouterr().err

    def test_zero_probability_is_quota_exit(self, tmp_path):
        code = main(
            ["generate", "--out", str(tmp_path / "x"), "--orders", "8", "--er", "2",
             "--er-p", "0", "--seed", "3", "--max-attempts", "40"]
        )
        assert code == 3

    def test_bad_parameter_is_usage_exit(self, tmp_path):
        code = main(
            ["generate", "--out", str(tmp_path / "x"), "--orders", "8", "--er", "2",
             "--er-p", "1.5", "--seed", "3"]
        )
        assert code == 1


class TestRecommend:
    def test_c5_exact_reliability(self, c5_file, capsys):
        code = main(["recommend", c5_file, "--heuristics", "phi", "--exact", "--p", "0.9"])
        assert code == 0
        out = capsys.readouterr().out
        assert "# base_reliability_at_p: 0.95949" in out
        assert "0.97488" in out

    def test_complete_graph_is_data_error(self, tmp_path, capsys):
        path = tmp_path / "k5.el"
        write_edge_list(build_graph(5, complete_edges(5)), path)
        assert main(["recommend", str(path), "--seed", "1"]) == 2
        assert "no insertion possible" in capsys.readouterr().err

    def test_p3_all_heuristics_agree(self, tmp_path, capsys):
        path = tmp_path / "p3.el"
        write_edge_list(build_graph(3, PATH3), path)
        code = main(["recommend", str(path), "--seed", "5"])
        assert code == 0
        body = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
        rows = body[1:]  # drop the csv header
        assert len(rows) == 7
        assert all(",0,2," in ln or ln.endswith(",0,2") or ",0,2" in ln for ln in rows)

    def test_graph6_input(self, tmp_path, capsys):
        path = tmp_path / "c5.g6"
        write_graph6(build_graph(5, CYCLE5), path)
        assert main(["recommend", str(path), "--heuristics", "gamma"]) == 0

    def test_disconnected_is_data_error(self, tmp_path):
        path = tmp_path / "dis.el"
        write_edge_list(build_graph(4, [(0, 1), (2, 3)]), path)
        assert main(["recommend", str(path), "--seed", "1"]) == 2

    def test_missing_file_is_data_error(self, tmp_path):
        assert main(["recommend", str(tmp_path / "absent.el"), "--seed", "1"]) == 2

    def test_random_needs_seed(self, c5_file):
        assert main(["recommend", c5_file, "--heuristics", "random"]) == 1

    def test_unknown_heuristic_is_usage_error(self, c5_file):
        assert main(["recommend", c5_file, "--heuristics", "zeta"]) == 1

    def test_post_hoc_needs_exact(self, c5_file):
        assert main(["recommend", c5_file, "--heuristics", "b-posthoc"]) == 1
        assert main(["recommend", c5_file, "--heuristics", "b-posthoc", "--exact"]) == 0

    def test_json_output(self, c5_file, tmp_path):
        out = tmp_path / "rec.json"
        code = main(
            ["recommend", c5_file, "--heuristics", "phi,gamma", "--exact",
             "--format", "json", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["base_reliability_at_p"] == pytest.approx(0.95949)
        assert {c["heuristic"] for c in payload["candidates"]} == {"phi", "gamma"}


class TestEvaluate:
    def test_full_run_and_identical_bodies(self, dataset, tmp_path):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        args = ["evaluate", dataset, "--seed", "11"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2), "--no-figures"]) == 0
        for name in ("summary.csv", "rdi.csv", "rdi_graphs.csv", "tests.csv", "report.json"):
            assert read_body(out1 / name) == read_body(out2 / name)
        assert (out1 / "rdi_boxplot.png").exists()
        assert not (out2 / "rdi_boxplot.png").exists()

    def test_summary_contents(self, dataset, tmp_path):
        out = tmp_path / "rep"
        assert main(["evaluate", dataset, "--out", str(out), "--seed", "11"]) == 0
        body = read_body(out / "summary.csv")
        assert body[0].startswith("heuristic,insertions,best,unique,mrdi")
        ids = [ln.split(",")[0] for ln in body[1:]]
        assert ids == ["alpha", "phi", "beta", "gamma", "delta", "random",
                       "phi-cap", "b-posthoc", "gamma-posthoc"]
        report = json.loads((out / "report.json").read_text())
        assert report["n_graphs"] == 12
        assert len(report["tests"]) == 3

    def test_manifest_hash_embedded(self, dataset, tmp_path):
        out = tmp_path / "rep"
        assert main(["evaluate", dataset, "--out", str(out), "--seed", "11"]) == 0
        manifest = json.loads((os.path.join(dataset, "manifest.json") and
                               open(os.path.join(dataset, "manifest.json")).read()))
        with open(out / "summary.csv") as fh:
            header = fh.read()
        assert manifest["manifest_hash"] in header

    def test_tampered_manifest_refused(self, dataset, tmp_path):
        manifest_path = os.path.join(dataset, "manifest.json")
        with open(manifest_path) as fh:
            manifest = json.load(fh)
        manifest["graphs"][0]["order"] = 9
        with open(manifest_path, "w") as fh:
            json.dump(manifest, fh)
        assert main(["evaluate", dataset, "--out", str(tmp_path / "x"), "--seed", "1"]) == 2

    def test_jobs_flag(self, dataset, tmp_path):
        out = tmp_path / "par"
        assert main(["evaluate", dataset, "--out", str(out), "--seed", "11",
                     "--jobs", "2", "--no-figures"]) == 0
        assert (out / "report.json").exists()

    def test_missing_dataset_is_data_error(self, tmp_path):
        assert main(["evaluate", str(tmp_path / "nope"), "--out", str(tmp_path / "o"),
                     "--seed", "1"]) == 2


class TestBench:
    def test_bench_outputs(self, dataset, tmp_path):
        out = tmp_path / "bench"
        code = main(["bench", dataset, "--out", str(out), "--seed", "2",
                     "--heuristics", "gamma,phi,random", "--repetitions", "2"])
        assert code == 0
        body = read_body(out / "timing.csv")
        assert body[0].startswith("order,heuristic")
        assert len(body) == 4  # header + 3 heuristics at one order
        assert (out / "timing.json").exists()
        assert (out / "timing_boxplot.png").exists()

    def test_zero_repetitions_usage_error(self, dataset, tmp_path):
        assert main(["bench", dataset, "--out", str(tmp_path / "x"), "--seed", "2",
                     "--repetitions", "0"]) == 1


def test_unknown_subcommand_is_usage_error():
    assert main(["frobnicate"]) == 1


def test_usage_error_on_no_args():
    assert main([]) == 1


def test_console_script_end_to_end(tmp_path):
    import subprocess
    import sys

    out = tmp_path / "c5.el"
    write_edge_list(build_graph(5, CYCLE5), out)
    proc = subprocess.run(
        [sys.executable, "-m", "vertrel.cli", "recommend", str(out),
         "--heuristics", "phi-cap", "--exact"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "0.97488" in proc.stdout
