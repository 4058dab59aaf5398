import json
from pathlib import Path

import pytest

from quiverforge.cli import main

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    data = json.loads(out)
    assert data["exit"] == code and data["schema"] == 1
    return code, data


def fx(name):
    return FIX / name


def test_graph_commands(capsys):
    code, out = run(capsys, "graph", "classify", "--file", fx("a3.json"))
    assert code == 0 and "positive-definite (A3)" in out
    code, out = run(capsys, "graph", "classify", "--file", fx("affine_d4.json"))
    assert code == 0 and "~D4" in out
    code, data = run_json(capsys, "graph", "delta", "--builtin", "affine-d4")
    assert code == 0 and data["delta"] == {"v0": 2, "v1": 1, "v2": 1, "v3": 1, "v4": 1}
    code, out = run(capsys, "graph", "classify", "--file", fx("triple_edge.json"))
    assert "indefinite" in out


def test_algebra_commands(capsys):
    code, _ = run(capsys, "algebra", "member", "--algebra", "adhm", "--element", "x y - y x + i j")
    assert code == 0
    code, data = run_json(capsys, "algebra", "member", "--algebra", "jordan", "--element", "x")
    assert code == 2 and data["status"] == "unresolved"
    code, _ = run(capsys, "algebra", "reduce", "--algebra", "jordan", "--element", "y x")
    assert code == 0
    code, _ = run(capsys, "algebra", "dg-check", "--builtin", "affine-a:1")
    assert code == 0


def test_rep_commands(capsys):
    assert run(capsys, "rep", "check", "--rep", fx("adhm_n2.json"))[0] == 0
    assert run(capsys, "rep", "check", "--rep", fx("commutator_fail.json"))[0] == 1
    assert run(capsys, "rep", "moment", "--rep", fx("adhm_n2.json"))[0] == 0
    code, out = run(capsys, "rep", "chart-verify", "--stack", "d4", "--chart", "2")
    assert code == 0 and "21/21" in out


def test_stability_commands(capsys):
    code, data = run_json(capsys, "stability", "check", "--rep", fx("adhm_n2.json"), "--zeta", '{"0": -1}')
    assert code == 0 and data["verdict"]["status"] == "stable"
    code, _ = run(capsys, "stability", "check", "--rep", fx("adhm_zero.json"), "--zeta", '{"0": 1}')
    assert code == 1
    code, out = run(capsys, "stability", "witness", "--rep", fx("adhm_zero.json"), "--zeta", '{"0": 1}',
                    "--witness", "@%s" % fx("witness_line.json"))
    assert code == 0 and "valid-destabilizer" in out
    code, out = run(capsys, "stability", "mc-region", "--values",
                    '{"u1": {"novikov": [{"exp": "1/2", "coeff": 1}]}, "v1": 0}',
                    "--areas", '{"1": ["1/2", 1]}', "--n", 2)
    assert code == 0 and "Def(S_1)" in out


def test_monad_commands(capsys):
    code, out = run(capsys, "monad", "eval", "--adhm", fx("fixture_n1.json"), "--grid", 5)
    assert code == 0 and "(0,0)" in out
    assert run(capsys, "monad", "d2", "--adhm", fx("adhm_n2.json"))[0] == 0
    code, data = run_json(capsys, "monad", "exactness", "--rep", fx("a1_rank11.json"), "--levels", 3)
    assert code == 0
    assert run(capsys, "monad", "build", "--adhm", fx("commutator_fail.json"))[0] == 64


def test_stack_commands(capsys, tmp_path):
    code, out = run(capsys, "stack", "verify", "--builtin", "framed-a1")
    assert code == 0 and "197/197" in out
    code, out = run(capsys, "stack", "export", "--builtin", "an:1")
    assert code == 0
    path = tmp_path / "an1.json"
    path.write_text(out)
    code, out = run(capsys, "stack", "verify", "--file", path)
    assert code == 0


def test_stack_verify_d4(capsys):
    code, data = run_json(capsys, "stack", "verify", "--builtin", "d4")
    assert code == 0 and data["effort_degree"] == 12


def test_usage_errors(capsys):
    assert run(capsys, "rep", "check", "--rep", fx("bad_rep.json"))[0] == 64
    assert run(capsys, "stack", "verify")[0] == 64
    assert run(capsys, "graph", "classify", "--file", "/nonexistent.json")[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 64


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("QUIVERFORGE_THREADS", "zero")
    assert run(capsys, "graph", "delta", "--builtin", "affine-d4")[0] == 64
    monkeypatch.setenv("QUIVERFORGE_THREADS", "2")
    code, data = run_json(capsys, "graph", "delta", "--builtin", "affine-d4")
    assert code == 0 and data["threads"] == 2
