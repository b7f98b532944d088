import pytest

from domgame.graph import path, star
from domgame.rules import (GIFT, Action, GameOver, IllegalAction, Player, Variant, apply_action,
                           is_legal, legal_actions, move_log_json, new_game, replay_move_log,
                           staller_start_adapter)


def test_standard_game_on_p3():
    s = new_game(path(3), Variant.STANDARD)
    assert [a.vertex for a in legal_actions(s)] == [0, 1, 2]
    s = apply_action(s, Action.play(0))
    assert s.turn is Player.STALLER and s.dominated == [True, True, False]
    assert not is_legal(s, GIFT)
    assert [a.vertex for a in legal_actions(s)] == [1, 2]
    s = apply_action(s, Action.play(2))
    assert s.over
    with pytest.raises(GameOver):
        legal_actions(s)


def test_move_gift_rules():
    s = new_game(path(4))
    s = apply_action(s, Action.play(1))
    assert GIFT in legal_actions(s)
    s = apply_action(s, GIFT)
    assert s.turn is Player.DOMINATOR and s.time == 1
    # Dominator may play a vertex that dominates nothing new
    assert is_legal(s, Action.play(0))
    s2 = apply_action(s, Action.play(0))
    assert s2.dominated == s.dominated and s2.time == 2


def test_staller_cannot_play_unplayable():
    s = apply_action(new_game(star(3)), Action.play(1))
    assert not s.playable(2) or s.new_count(2) > 0
    s = apply_action(new_game(path(2)), Action.play(0))
    assert s.over


def test_illegal_action_raises():
    s = apply_action(new_game(path(5), Variant.STANDARD), Action.play(1))
    with pytest.raises(IllegalAction):
        apply_action(s, Action.play(0))


def test_isolated_vertex_rejected():
    from domgame.graph import Graph
    with pytest.raises(ValueError):
        new_game(Graph(3, [(0, 1)]))


def test_log_replay():
    s = new_game(path(5))
    for a in (Action.play(1), GIFT, Action.play(3)):
        s = apply_action(s, a)
    r = replay_move_log(path(5), move_log_json(s))
    assert r.dominated == s.dominated and r.time == s.time


def test_staller_start_adapter():
    h, fwd = staller_start_adapter(star(3), 0)
    assert h.n == 0 and fwd == {}
    h, fwd = staller_start_adapter(path(5), 1)
    assert h == path(3) and fwd == {2: 0, 3: 1, 4: 2}
