from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from kellymod import pair_checks
from kellymod.cli import CATALOGUE, main
from kellymod.graphs import Graph, serialize_graph
from kellymod.report import REPORT_SCHEMA, Report, Route, Tally, aggregate
from kellymod.tournaments import circular_dilation, dual, serialize_tournament


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return code, doc


def test_rank_examples(capsys):
    code, doc = run_json(capsys, "rank", "--v", "6", "--t", "2", "--k", "3", "--p", "2")
    assert code == 0
    assert doc["data"] == {"wilson": 10, "elimination": 10, "rational": 15, "agree": True, "kernel_dim": 5}
    code, doc = run_json(capsys, "rank", "--v", "6", "--t", "2", "--k", "4", "--p", "2")
    assert (doc["data"]["wilson"], doc["data"]["kernel_dim"]) == (14, 1)
    code, doc = run_json(capsys, "rank", "--v", "5", "--t", "2", "--k", "3")
    assert doc["data"] == {"rational": 10}


def test_kernel_examples(capsys):
    code, doc = run_json(capsys, "kernel", "--v", "6", "--t", "2", "--k", "4", "--p", "2")
    assert code == 0
    assert doc["data"]["computed"] == "AllOnes" and doc["data"]["basis"] == [[1] * 15]
    assert doc["counters"]["match"] == 1
    code, doc = run_json(capsys, "kernel", "--v", "7", "--t", "2", "--k", "3", "--p", "2")
    assert doc["data"]["computed"] == "Other" and doc["counters"]["dim"] == 6


def test_diagonal_command(capsys):
    code, doc = run_json(capsys, "diagonal", "--v", "6", "--t", "2", "--k", "3")
    assert code == 0 and doc["data"]["wilson"] == [[3, 1], [2, 5], [1, 9]]


@pytest.mark.parametrize(
    "argv, want",
    [
        (["kernel", "--v", "6", "--t", "2", "--k", "6", "--p", "2"], 2),
        (["kernel", "--v", "6", "--t", "2", "--k", "3", "--p", "4"], 2),
        (["rank", "--v", "40", "--t", "1", "--k", "2"], 3),
        (["verify", "thm-main", "--v", "5"], 2),
        (["verify", "thm-graph-1.5", "--v", "9", "--k", "3", "--p", "3", "--route", "exhaustive"], 3),
    ],
)
def test_exit_codes(capsys, argv, want):
    code, _, err = run(capsys, *argv)
    assert code == want and err.startswith("kellymod:")


def test_unknown_id_lists_catalogue(capsys):
    code, _, err = run(capsys, "verify", "thm-nonsense")
    assert code == 2
    for theorem in CATALOGUE:
        assert theorem in err


def test_argparse_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rank", "--v", "6"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "thm-main", "--v", "5", "--t", "2", "--k", "3", "--p", "3"],
        ["verify", "claim-bipartite", "--v", "7", "--k", "3"],
        ["verify", "thm-tournament-5.1", "--v", "5", "--k", "3", "--p", "3"],
        ["verify", "lemma-pouzet", "--v", "5", "--t", "1", "--r", "1"],
        ["verify", "lemma-41", "--max-order", "6"],
    ],
)
def test_verify_examples_pass(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0 and doc["verdict"] == "pass"


def test_verify_sampled_is_deterministic(capsys):
    argv = ["verify", "thm-main", "--v", "7", "--t", "2", "--k", "3", "--p", "3", "--route", "sampled", "--seed", "11", "--sample", "50"]
    code, first, _ = run(capsys, *argv, "--json")
    _, second, _ = run(capsys, *argv, "--json")
    assert code == 0 and first == second
    doc = json.loads(first)
    assert doc["route"] == "Sampled" and doc["seed"] == 11 and doc["ms"] == 0


def test_timing_flag_records_ms(capsys):
    _, doc = run_json(capsys, "verify", "thm-graph-1.5", "--v", "5", "--k", "2", "--p", "3", "--timing")
    assert doc["ms"] >= 0


def test_pair_files(capsys, tmp_path):
    g, g2 = tmp_path / "g.txt", tmp_path / "g2.txt"
    g.write_text(serialize_graph(Graph.cycle(6)))
    g2.write_text(serialize_graph(Graph.cycle(6).complement()))
    code, doc = run_json(capsys, "verify", "thm-graph-1.4", "--graph", str(g), "--graph2", str(g2), "--k", "4", "--p", "2")
    assert code == 0 and doc["counters"]["hypothesis_holds"] == 1

    t, t2 = tmp_path / "t.txt", tmp_path / "t2.txt"
    tour = circular_dilation((2, 2, 1))
    t.write_text(serialize_tournament(tour))
    t2.write_text(serialize_tournament(dual(tour)))
    code, doc = run_json(capsys, "verify", "lemma-hypomorphe", "--tournament", str(t), "--tournament2", str(t2))
    assert code == 0 and doc["route"] == "Constructed"


def test_pair_file_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("v 3\ne 0 1\ne 2 2\n")
    code, _, err = run(capsys, "verify", "claim-clawfree", "--graph", str(bad), "--graph2", str(bad))
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "verify", "claim-clawfree", "--graph", str(tmp_path / "missing.txt"), "--graph2", str(bad))
    assert code == 2


def test_counterexample_exits_1(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(pair_checks, "is_claw_free", lambda g: False)
    g = tmp_path / "g.txt"
    g.write_text(serialize_graph(Graph.cycle(5)))
    code, out, err = run(capsys, "verify", "claim-clawfree", "--graph", str(g), "--graph2", str(g))
    assert code == 1 and "COUNTEREXAMPLE" in err and "FAIL" in out


def test_report_invariants():
    with pytest.raises(ValueError):
        Report("x", {}, Route.SAMPLED, {}, [])
    with pytest.raises(ValueError):
        Report("x", {}, Route.KERNEL, {}, [], seed=3)
    tally = Tally()
    for i in range(25):
        tally.fail(i, {"i": i})
    rep = tally.to_report("x", {}, Route.EXHAUSTIVE)
    assert len(rep.counterexamples) == 10 and rep.counters["counterexamples_total"] == 25
    assert rep.verdict == "fail"
    agg = aggregate("all", {}, [rep, Tally().to_report("y", {}, Route.KERNEL)])
    assert agg.verdict == "fail" and agg.counters["reports_passed"] == 1
    jsonschema.validate(agg.to_dict(), REPORT_SCHEMA)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kellymod", "rank", "--v", "5", "--t", "2", "--k", "3", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["data"]["rational"] == 10
