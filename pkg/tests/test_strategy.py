import random

import pytest

from domgame.adversaries import worst_case_search
from domgame.graph import Graph, complete, cycle, hat, path, random_isolate_free
from domgame.oracle import bound_d, bound_s
from domgame.reductions import (build_player, find_isolated_edge, find_triple_anchor,
                                find_two_leaf_parent)
from domgame.rules import GIFT, Action, Player, legal_actions
from domgame.strategy import Dominator, StrategyError


def play(g, seed=0, gift_p=0.2):
    d = Dominator(g)
    rng = random.Random(seed)
    while not d.over:
        if d.state.turn is Player.DOMINATOR:
            d.move()
        else:
            acts = [a for a in legal_actions(d.state) if not a.is_gift]
            d.observe(GIFT if rng.random() < gift_p else rng.choice(acts))
    return d


def reduced(g):
    return not (find_isolated_edge(g) or find_two_leaf_parent(g) or find_triple_anchor(g))


@pytest.mark.parametrize("g", [path(5), cycle(5), cycle(7), hat(complete(2)), hat(path(3))], ids=str)
def test_games_meet_bound(g):
    for seed in range(10):
        d = play(g, seed)
        assert d.time <= bound_d(g.n)
        assert d.ledger.pi == 6 * g.n
        assert all(pi >= 10 * t for t, pi in d.checkpoints)


def test_phase_transitions_are_monotone_and_snapshot_once():
    d = play(hat(path(3)), 3)
    phases = [p for p, _ in d.transitions]
    assert phases == sorted(set(phases))
    assert sum(1 for e in d.events if e["event"] == "snapshot") <= 1


def test_random_reduced_graphs():
    done = 0
    for seed in range(300):
        g = random_isolate_free(11, 0.2, seed)
        if not reduced(g):
            continue
        d = play(g, seed)
        assert d.time <= bound_d(g.n)
        done += 1
    assert done > 50


def test_clone_and_fingerprint():
    d = Dominator(hat(complete(2)))
    d.move()
    c = d.clone()
    assert c.fingerprint() == d.fingerprint()
    c.observe(GIFT)
    assert c.fingerprint() != d.fingerprint()
    assert d.state.turn is Player.STALLER


def test_protocol_errors():
    d = Dominator(path(5))
    with pytest.raises(StrategyError):
        d.observe(Action.play(0))
    d.move()
    with pytest.raises(StrategyError):
        d.move()


def test_first_move_earns_fourteen():
    d = Dominator(path(5))
    d.move()
    assert d.ledger.pi >= 14
    rec = [e for e in d.events if e["event"] == "recolor"][0]
    assert rec["delta"] >= 14 and rec["min_earn"] == 14


def test_reaction_triggers_are_playable():
    d = Dominator(hat(path(3)))
    d.move()
    trig = d.reaction_triggers()
    assert all(d.state.playable(v) for v in trig)


def test_requires_reduced_input_for_triple_anchor():
    from domgame.graph import c_step
    assert find_triple_anchor(c_step(hat(complete(2)), 2)) is not None


# graphs where an earlier engine broke an axiom or a point minimum under Staller-start play
HARD_STALLER_START = [
    (13, [(0, 4), (1, 2), (1, 5), (3, 8), (4, 5), (4, 6), (4, 9), (5, 7), (5, 11), (6, 8), (6, 10), (7, 11), (7, 12), (8, 11), (9, 11)]),
    (14, [(0, 8), (1, 9), (2, 4), (2, 8), (2, 9), (3, 5), (3, 7), (3, 8), (3, 11), (4, 7), (5, 10), (5, 11), (6, 12), (9, 13), (10, 13), (12, 13)]),
    (14, [(0, 8), (1, 7), (2, 9), (3, 8), (3, 10), (3, 12), (4, 9), (4, 13), (5, 6), (6, 9), (7, 13), (8, 9), (8, 11), (8, 13), (9, 10)]),
    (10, [(0, 6), (0, 8), (0, 9), (1, 5), (1, 7), (1, 9), (2, 4), (2, 7), (3, 7), (3, 9), (4, 8), (4, 9), (6, 7), (6, 8), (7, 9)]),
    (13, [(0, 1), (0, 10), (1, 3), (1, 7), (1, 8), (1, 12), (2, 7), (2, 8), (3, 12), (4, 6), (4, 9), (4, 12), (5, 7), (7, 10), (11, 12)]),
    (14, [(0, 5), (0, 6), (0, 11), (1, 5), (1, 9), (2, 3), (2, 4), (2, 6), (2, 7), (2, 9), (3, 6), (3, 7), (3, 12), (4, 13), (5, 13), (6, 10), (7, 10), (8, 10)]),
    (12, [(0, 3), (0, 6), (0, 9), (1, 7), (2, 8), (4, 5), (4, 9), (6, 7), (6, 11), (7, 9), (8, 11), (9, 10), (9, 11)]),
]


@pytest.mark.parametrize("n, edges", HARD_STALLER_START, ids=lambda x: str(x) if isinstance(x, int) else "")
def test_hard_staller_start_graphs(n, edges):
    g = Graph(n, edges)
    for start, bound in (("s", bound_s(n)), ("d", bound_d(n))):
        w = worst_case_search(g, lambda: build_player(g, start, trace=False), start)
        assert w.moves <= bound
