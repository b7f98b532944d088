import json

import pytest

from domgame.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_gen_and_oracle(tmp_path, capsys):
    f = tmp_path / "p5.txt"
    assert run(capsys, "gen", "--family", "path:5", "--out", str(f))[0] == 0
    assert f.read_text().startswith("5 4\n")
    code, out = run(capsys, "oracle", "--graph", str(f))
    assert code == 0
    res = json.loads(out.out)
    assert res["value"] == 3 and res["extremal"]


def test_oracle_staller_start(capsys):
    code, out = run(capsys, "oracle", "--family", "tilde(hat(complete:2),0)", "--variant", "s")
    assert code == 0 and json.loads(out.out)["value"] == 7


def test_simulate_writes_trace_and_audit(tmp_path, capsys):
    t = tmp_path / "trace.jsonl"
    code, out = run(capsys, "simulate", "--family", "hat(path:3)", "--staller", "stress",
                    "--seed", "2", "--out", str(t))
    assert code == 0 and json.loads(out.out)["moves_played"] <= 9
    code, out = run(capsys, "audit", str(t))
    assert code == 0 and json.loads(out.out)["ok"]


def test_audit_failure_exit(tmp_path, capsys):
    t = tmp_path / "trace.jsonl"
    run(capsys, "simulate", "--family", "path:5", "--out", str(t))
    lines = [json.loads(x) for x in t.read_text().splitlines()]
    for r in lines:
        if r["event"] == "move":
            r["pi"] += 5
    t.write_text("".join(json.dumps(r) + "\n" for r in lines))
    assert run(capsys, "audit", str(t))[0] == 1


def test_verify_family(tmp_path, capsys):
    out_file = tmp_path / "r.jsonl"
    code, out = run(capsys, "verify", "--family", "cycle:5", "--family", "star:3",
                    "--out", str(out_file))
    assert code == 0 and json.loads(out.out)["graphs"] == 2
    assert len(out_file.read_text().splitlines()) == 2


def test_verify_exhaustive(capsys):
    code, out = run(capsys, "verify", "--exhaustive", "3", "--no-audit")
    assert code == 0 and json.loads(out.out)["graphs"] == 5


def test_bench(capsys):
    code, out = run(capsys, "bench", "--sizes", "20,40", "--moves", "5")
    assert code == 0 and len(json.loads(out.out)["rows"]) == 2


def test_play_scripted(monkeypatch, capsys):
    answers = iter(["0", "1", "2", "3", "4"] * 2)
    monkeypatch.setattr("builtins.input", lambda prompt="": next(answers))
    code, out = run(capsys, "play", "--family", "path:5")
    assert code == 0 and "game over" in out.out


def test_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 0\n")
    code, out = run(capsys, "oracle", "--graph", str(bad))
    assert code == 2 and "self-loop" in out.err
    assert run(capsys, "oracle", "--graph", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "gen", "--family", "nosuch:3")[0] == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args(["simulate", "--staller", "nobody"])
