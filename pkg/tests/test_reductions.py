from domgame.adversaries import worst_case_search
from domgame.graph import Graph, complete, path, star
from domgame.oracle import bound_d, bound_s
from domgame.reductions import (IsolatedEdgeWrapper, StallerStartAdapter, TripleWrapper,
                                TwoLeafWrapper, build_player, reduce)
from domgame.rules import GIFT, Action, Player


def union(*gs):
    edges, off = [], 0
    for g in gs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph(off, edges)


def triple(tail: int = 2) -> Graph:
    """Anchor 0 with dependent parents 1, 3, 5 (leaves 2, 4, 6) and a path tail 0-7-...;"""
    edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
    prev = 0
    for i in range(tail):
        edges.append((prev, 7 + i))
        prev = 7 + i
    return Graph(7 + tail, edges)


def worst(g, start="d"):
    return worst_case_search(g, lambda: build_player(g, start, trace=False), start).moves


def test_reduce_steps():
    assert [s.kind for s in reduce(complete(2))] == ["isolated-edge"]
    assert [s.kind for s in reduce(star(2))] == ["two-leaf-parent"]
    steps = reduce(triple())
    assert steps[0].kind == "triple-anchor" and steps[0].vertices[0] == 0
    assert reduce(path(5)) == []


def test_player_selection():
    assert isinstance(build_player(complete(2)), IsolatedEdgeWrapper)
    assert isinstance(build_player(star(2)), TwoLeafWrapper)
    assert isinstance(build_player(triple()), TripleWrapper)
    assert isinstance(build_player(path(5), "s"), StallerStartAdapter)


def test_single_edge_and_cherry():
    p = build_player(complete(2))
    assert p.move() in (0, 1) and p.over
    p = build_player(star(2))
    assert p.move() == 0 and p.over


def test_triple_answer_inside_gadget():
    g = triple()
    p = build_player(g, trace=False)
    p.move()
    if not p.over and p.state.turn is Player.STALLER:
        # Staller enters the gadget at a dependent parent not yet dominated
        x = next(v for v in (1, 3, 5) if p.state.playable(v))
        p.observe(Action.play(x))
        v = p.move()
        assert v in (1, 3, 5) and v != x


def test_lifted_bounds():
    cases = [complete(2), star(2), star(3), triple(1), triple(2), triple(3),
             union(complete(2), path(5)), union(star(2), triple(1)),
             union(complete(2), star(3), triple(2))]
    for g in cases:
        assert worst(g) <= bound_d(g.n), g
        assert worst(g, "s") <= bound_s(g.n), g


def test_staller_start_first_gift():
    p = build_player(path(5), "s")
    p.observe(GIFT)
    v = p.move()
    assert v is not None and not p.over
