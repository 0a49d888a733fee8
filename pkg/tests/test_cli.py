import json
import os
import subprocess
import sys

import pytest

from strongsub.cli import EXIT_FAILED, EXIT_INPUT, EXIT_LIMIT, EXIT_OK, EXIT_USAGE, main
from strongsub.digraph import Digraph, parse_dg
from strongsub.generators import complete_minus_3cycle
from strongsub.packing import Packing, Subgraph, verify_packing


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "graph.dg"
    path.write_text(complete_minus_3cycle(4).to_dg())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kappa_k_json(capsys, graph_file):
    code, out, _ = run(capsys, "--format", "json", "kappa-k", graph_file, "--k", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["value"] == 2 and data["argmin_set"] == [0, 1] and data["refuted_level"] == 3
    assert "elapsed_ms" not in data
    d = Digraph.from_json(data["digraph"])
    assert d == complete_minus_3cycle(4)
    parts = tuple(Subgraph.of(p["vertices"], map(tuple, p["arcs"])) for p in data["witness"])
    assert verify_packing(d, Packing(tuple(data["argmin_set"]), parts))


def test_timing_flag_adds_elapsed(capsys, graph_file):
    code, out, _ = run(capsys, "--format", "json", "--timing", "kappa-k", graph_file, "--k", "2")
    assert code == EXIT_OK and isinstance(json.loads(out)["elapsed_ms"], int)


def test_kappa_k_text(capsys, graph_file):
    code, out, _ = run(capsys, "kappa-k", graph_file, "--k", "2")
    assert code == EXIT_OK and out.startswith("kappa_2 = 2")


def test_kappa_s(capsys, graph_file):
    code, out, _ = run(capsys, "--format", "json", "kappa-s", graph_file, "--set", "0,1,2",
                       "--method", "candidates")
    assert code == EXIT_OK and json.loads(out)["argmin_set"] == [0, 1, 2]


def test_kappa(capsys, graph_file):
    code, out, _ = run(capsys, "--format", "json", "kappa", graph_file)
    data = json.loads(out)
    assert code == EXIT_OK and data["value"] == 2 and data["certificate"]["kind"] == "vertex-cut"


def test_min_check(capsys, graph_file):
    code, out, _ = run(capsys, "--format", "json", "min-check", graph_file, "--k", "2", "--ell", "2")
    data = json.loads(out)
    assert code == EXIT_OK and data["verdict"] == "minimal"


def test_ham_decomp(capsys):
    code, out, _ = run(capsys, "ham-decomp", "6")
    assert code == EXIT_OK and "no decomposition (exhaustive)" in out
    code, out, _ = run(capsys, "--format", "json", "ham-decomp", "5")
    assert code == EXIT_OK and len(json.loads(out)["cycles"]) == 4


def test_gen_round_trip(capsys):
    code, out, _ = run(capsys, "gen", "symmetric-join", "--n", "6", "--k", "2")
    assert code == EXIT_OK and parse_dg(out).size == 2 * (1 + 2 * 4)
    code, out, _ = run(capsys, "gen", "cycle", "--n", "3", "--dot")
    assert out.startswith("digraph cycle {")
    code, out, _ = run(capsys, "--format", "json", "gen", "random-strong", "--n", "5")
    first = json.loads(out)
    _, again, _ = run(capsys, "--format", "json", "gen", "random-strong", "--n", "5")
    assert json.loads(again) == first


def test_seed_changes_random_family(capsys):
    _, a, _ = run(capsys, "--seed", "1", "gen", "random-strong", "--n", "6", "--p", "0.4")
    _, b, _ = run(capsys, "--seed", "2", "gen", "random-strong", "--n", "6", "--p", "0.4")
    assert a != b


def test_extremal_csv(capsys):
    code, out, _ = run(capsys, "extremal", "--n", "4", "--k", "2", "--ell", "2",
                       "--space", "all-digraphs")
    assert code == EXIT_OK
    assert out.splitlines() == ["n,k,ell,f,F,|ex|,|Ex|", "4,2,2,8,9,1,1"]


def test_extremal_json_members_reparse(capsys):
    code, out, _ = run(capsys, "--format", "json", "extremal", "--n", "4", "--k", "2", "--ell", "2")
    data = json.loads(out)
    for member in data["ex"] + data["Ex"]:
        assert parse_dg(member["dg"]) == Digraph.from_json(member)


def test_classify(capsys):
    code, out, _ = run(capsys, "--format", "json", "classify", "--n", "5")
    data = json.loads(out)
    assert code == EXIT_OK
    assert sum(c["minimal"] for c in data["classes"]) == 1


def test_verify_characterization_suite(capsys):
    code, out, _ = run(capsys, "verify", "thme", "--n", "5")
    assert code == EXIT_OK
    assert out.startswith("suite thme: PASS") and "FAIL" not in out


def test_output_file(capsys, tmp_path, graph_file):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "--format", "json", "--output", str(target), "kappa", graph_file)
    assert code == EXIT_OK and out == "" and json.loads(target.read_text())["value"] == 2


def test_stdin_and_json_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"n": 3, "arcs": [[0, 1], [1, 2], [2, 0]]})))
    code, out, _ = run(capsys, "kappa-k", "-", "--k", "3")
    assert code == EXIT_OK and out.startswith("kappa_3 = 1")


class TestExitCodes:
    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == EXIT_USAGE

    def test_missing_option(self, capsys, graph_file):
        assert run(capsys, "kappa-k", graph_file)[0] == EXIT_USAGE

    def test_missing_file(self, capsys):
        assert run(capsys, "kappa", "/nonexistent/graph.dg")[0] == EXIT_INPUT

    def test_malformed_graph(self, capsys, tmp_path):
        bad = tmp_path / "bad.dg"
        bad.write_text("3\n0 0\n")
        code, _, err = run(capsys, "kappa", str(bad))
        assert code == EXIT_INPUT and "loop" in err.lower()

    def test_bad_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(capsys, "kappa", str(bad))[0] == EXIT_INPUT

    def test_bad_k(self, capsys, graph_file):
        assert run(capsys, "kappa-k", graph_file, "--k", "7")[0] == EXIT_INPUT

    def test_bad_set(self, capsys, graph_file):
        assert run(capsys, "kappa-s", graph_file, "--set", "a,b")[0] == EXIT_INPUT

    def test_unsupported_family(self, capsys):
        assert run(capsys, "gen", "union-ham-cycles", "--n", "6", "--ell", "2")[0] == EXIT_INPUT

    def test_limit_emits_bounds(self, capsys, graph_file):
        code, out, _ = run(capsys, "--format", "json", "--node-limit", "2",
                           "kappa-k", graph_file, "--k", "2")
        data = json.loads(out)
        assert code == EXIT_LIMIT
        assert data["error"] == "search-limit" and data["lower"] <= 2 <= data["upper"]

    def test_failed_suite(self, capsys, monkeypatch):
        from strongsub import cli, suites

        failing = suites.SuiteReport("eq1", [suites.Check("always fails", False)])
        monkeypatch.setattr(cli, "run_suite", lambda *a, **k: failing)
        assert run(capsys, "verify", "eq1")[0] == EXIT_FAILED


def test_console_script_and_env_override(tmp_path, graph_file):
    env = {**os.environ, "STRONGSUB_FORMAT": "json"}
    proc = subprocess.run(
        [sys.executable, "-m", "strongsub.cli", "kappa-k", graph_file, "--k", "2"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 2
    # An explicit flag beats the environment.
    proc = subprocess.run(
        [sys.executable, "-m", "strongsub.cli", "--format", "text", "kappa-k", graph_file, "--k", "2"],
        capture_output=True, text=True, env=env,
    )
    assert proc.stdout.startswith("kappa_2 = 2")


def test_global_options_after_subcommand(capsys, graph_file, tmp_path):
    code, out, _ = run(capsys, "kappa-k", graph_file, "--k", "2", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["value"] == 2
    target = tmp_path / "late.json"
    code, out, _ = run(capsys, "--format", "text", "ham-decomp", "5", "--format", "json",
                       "--jobs", "2", "--output", str(target))
    assert out == "" and len(json.loads(target.read_text())["cycles"]) == 4
