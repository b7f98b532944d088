"""Property-based checks on random small graphs."""
from hypothesis import given, settings, strategies as st

from domgame import harness
from domgame.graph import Graph, format_edge_list, parse_edge_list
from domgame.oracle import bound_d, gamma_g, gamma_g_reference


@st.composite
def isolate_free(draw, nmin=2, nmax=9):
    n = draw(st.integers(nmin, nmax))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = set(draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))))
    for v in range(n):  # attach every isolated vertex to its successor (or predecessor)
        if not any(v in e for e in edges):
            w = v + 1 if v + 1 < n else v - 1
            edges.add((min(v, w), max(v, w)))
    return Graph(n, edges)


@settings(max_examples=60, deadline=None)
@given(isolate_free())
def test_edge_list_roundtrip(g):
    assert parse_edge_list(format_edge_list(g)) == g


@settings(max_examples=40, deadline=None)
@given(isolate_free(nmax=7))
def test_memo_matches_reference(g):
    for v in "ds":
        assert gamma_g(g, v).value == gamma_g_reference(g, v)


@settings(max_examples=60, deadline=None)
@given(isolate_free(), st.sampled_from(["random", "greedy", "gift", "stress"]), st.integers(0, 99))
def test_games_meet_bound_and_audit(g, adv, seed):
    rep = harness.simulate(g, adv, seed=seed)
    assert rep.ok, rep.violations
    assert rep.moves_played <= bound_d(g.n)
    assert harness.audit_replay(rep.trace)["ok"]
