import json

import pytest

from domgame import harness
from domgame.graph import complete, cycle, hat, path, star
from domgame.reductions import build_player


@pytest.mark.parametrize("g, adv, limit", [(path(5), "greedy", 3), (cycle(4), "random", 2),
                                           (hat(path(3)), "stress", 9)], ids=str)
def test_simulate_examples(g, adv, limit):
    rep = harness.simulate(g, adv, seed=3)
    assert rep.ok and rep.moves_played <= limit
    assert all(pi >= 10 * t for t, pi, *_ in rep.checkpoints)
    assert rep.final_pi == [6 * g.n]


def test_simulate_worst_matches_search():
    g = hat(complete(2))
    rep = harness.simulate(g, "worst")
    assert rep.ok and rep.moves_played == 6


def test_worst_needs_gift_variant():
    rep = harness.simulate(path(5), "worst", variant="standard")
    assert not rep.ok


@pytest.mark.parametrize("start", ["d", "s"])
def test_standard_variant(start):
    g = hat(path(3))
    rep = harness.simulate(g, "random", variant="standard", start=start, seed=1)
    assert rep.ok and rep.moves_played <= rep.bound
    assert not any(json.dumps(e).count('"gift"') and e.get("event") == "end" for e in rep.trace)


def test_trace_roundtrip(tmp_path):
    rep = harness.simulate(hat(path(3)), "gift", seed=2)
    out = tmp_path / "t.jsonl"
    harness.write_trace(rep, str(out))
    assert harness.audit_replay(str(out)) == {"ok": True, "errors": []}
    kinds = {json.loads(line)["event"] for line in out.read_text().splitlines()}
    assert {"game", "header", "move", "recolor", "checkpoint", "end"} <= kinds


def _tampered(rep, pick, edit):
    recs = json.loads(json.dumps(rep.trace))
    for r in recs:
        if pick(r):
            edit(r)
            break
    return harness.audit_replay(recs)


def test_audit_detects_pi_tamper():
    rep = harness.simulate(hat(path(3)), "random", seed=4)
    res = _tampered(rep, lambda r: r["event"] == "checkpoint",
                    lambda r: r.__setitem__("pi", r["pi"] - 7))
    assert not res["ok"] and res["errors"]


def test_audit_detects_recolor_tamper():
    rep = harness.simulate(hat(path(3)), "random", seed=4)

    def edit(r):
        v, _ = r["recolors"][0]
        r["recolors"][0] = [v, "W"]
    res = _tampered(rep, lambda r: r["event"] == "recolor" and r.get("recolors"), edit)
    assert not res["ok"]


def test_audit_detects_long_real_game():
    rep = harness.simulate(path(5), "random", seed=0)
    recs = json.loads(json.dumps(rep.trace))
    recs[-1]["log"] += [[99, "D", 0]] * 5
    assert not harness.audit_replay(recs)["ok"]


def test_check_graph_small():
    r = harness.check_graph(cycle(5), seed=1)
    assert r["ok"], r["violations"]
    assert r["worst_d"] <= 3 and r["gamma_g"] == 3 and r["gamma_g_staller"] == 2


def test_verify_corpus_summary():
    s = harness.verify_corpus([path(4), star(3), complete(3)], worst_cap=6, oracle_cap=6)
    assert s["ok"] and s["graphs"] == 3


def test_corpora():
    assert sum(1 for _ in harness.corpus_exhaustive(4)) == 46
    gs = list(harness.corpus_random(5, seed=9))
    assert all(8 <= g.n <= 14 and g.isolate_free() for g in gs)
    assert [g.edges for g in gs] == [g.edges for g in harness.corpus_random(5, seed=9)]


def test_hat_random_shape():
    g = harness.hat_random(50, seed=1)
    assert g.n == 250 and g.isolate_free()


def test_bench_rows():
    res = harness.bench_move_cost([harness.hat_random(40, seed=0)], moves=10)
    row = res["rows"][0]
    assert row["directives"] == 10 and row["max_touches"] >= row["avg_touches"] > 0


def _scripted(lines):
    it = iter(lines)
    return lambda prompt: next(it)


def test_play_rejects_gift_in_standard():
    out = []
    moves = ["gift", "x", "0", "1", "2", "3", "4"]
    rep = harness.play_interactive(path(5), "standard", "d", read=_scripted(moves), write=out.append)
    assert "gifts are not allowed in the standard variant" in out
    assert any(s.startswith("game over") for s in out)
    assert rep.moves_played <= 3


def test_play_rejects_unplayable():
    out = []
    g = path(5)
    first = build_player(g, trace=False).move()
    moves = [str(first), "99"] + [str(v) for v in range(5)] * 2
    harness.play_interactive(g, "gift", "d", read=_scripted(moves), write=out.append)
    assert f"vertex {first} is not playable" in out
    assert "vertex 99 is not playable" in out


def test_play_eof_aborts():
    def read(prompt):
        raise EOFError
    with pytest.raises(KeyboardInterrupt):
        harness.play_interactive(path(5), read=read, write=lambda s: None)
