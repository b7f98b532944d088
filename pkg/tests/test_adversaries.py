import pytest

from domgame.adversaries import (GiftHappyStaller, GreedyStaller, RandomStaller,
                                 ReactionStressStaller, SearchLimit, make_staller,
                                 worst_case_search)
from domgame.graph import cycle, hat, path, complete
from domgame.oracle import gamma_g
from domgame.reductions import build_player
from domgame.rules import GIFT, GameState, Player


def wc(g, start="d", **kw):
    return worst_case_search(g, lambda: build_player(g, start, trace=False), start, **kw)


def test_greedy_picks_fewest_new():
    s = GameState(path(5))
    s.play_inplace(1)
    a = GreedyStaller().choose(s)
    assert a.vertex == 2 and s.new_count(2) == 1


def test_gift_happy_always_gifts_at_one():
    s = GameState(path(5))
    s.play_inplace(1)
    st = GiftHappyStaller(seed=1, p=1.0)
    assert all(st.choose(s) is GIFT for _ in range(20))


def test_random_is_seeded():
    s = GameState(path(9))
    s.play_inplace(4)
    a = [RandomStaller(5).choose(s) for _ in range(3)]
    b = [RandomStaller(5).choose(s) for _ in range(3)]
    assert a == b


def test_stress_prefers_triggers():
    class P:
        def reaction_triggers(self):
            return [7]
    s = GameState(path(9))
    s.play_inplace(1)
    assert ReactionStressStaller(0).choose(s, P()).vertex == 7


def test_make_staller():
    assert make_staller("greedy").name == "greedy"
    with pytest.raises(ValueError):
        make_staller("worst")


@pytest.mark.parametrize("g, value", [(path(5), 3), (path(3), 1), (cycle(5), 3)], ids=str)
def test_worst_case_values(g, value):
    assert wc(g).moves == value


def test_worst_case_dominates_oracle():
    for g in (path(6), cycle(6), hat(complete(2))):
        assert wc(g).moves >= gamma_g(g).value


def test_worst_line_replays():
    g = hat(complete(2))
    res = wc(g)
    assert sum(1 for who, _ in res.line if who == "D" or _ is not None) == res.moves


def test_node_budget():
    with pytest.raises(SearchLimit):
        wc(hat(path(3)), max_nodes=5)
