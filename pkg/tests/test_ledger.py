import pytest

from domgame.graph import path
from domgame.ledger import (B, G, O, R, W, Y, AxiomViolation, Color, ColorLedger, RecolorTx,
                            ShortfallError, commit, delta, minimum_color, recolor_to_minimum,
                            set_phase_axioms, validate)
from domgame.rules import GameState
from domgame.taxonomy import classify


def setup(g):
    st = GameState(g)
    led = ColorLedger(g.n)
    return st, led, classify(g, st, led)


def test_points_table():
    assert [c.points for c in (W, Y, G, B, O, R)] == [6, 5, 4, 3, 2, 0]
    assert Color.WHITE.label == "white"


def test_commit_and_delta():
    st, led, view = setup(path(5))
    st.play_inplace(2)  # dominates 1, 2, 3
    tx = RecolorTx({2: R, 1: G, 3: G}, 14, "t")
    assert delta(tx, led) == 10
    with pytest.raises(ShortfallError):
        commit(tx, led, view, full=True)
    assert led.pi == 0 and led.colors[2] == W
    commit(RecolorTx({2: R, 1: G, 3: G}, 10), led, view, full=True)
    assert led.pi == 10 and validate(led, view) == []


def test_violation_rolls_back():
    st, led, view = setup(path(5))
    st.play_inplace(2)
    with pytest.raises(AxiomViolation) as e:
        commit(RecolorTx({0: R}), led, view, full=True)  # 0 is undominated
    assert {v.axiom for v in e.value.violations} >= {"P1"}
    assert led.colors[0] == W and led.pi == 0


def test_red_requires_unplayable():
    st, led, view = setup(path(5))
    st.play_inplace(2)
    with pytest.raises(AxiomViolation, match="P2"):
        commit(RecolorTx({1: R}), led, view, full=True)  # 1 still sees undominated 0


def test_late_colors_need_late_phase():
    st, led, view = setup(path(6))
    st.play_inplace(2)
    with pytest.raises(AxiomViolation, match="P6"):
        commit(RecolorTx({2: B}), led, view, full=True)


def test_phase_table_and_monotonicity():
    st, led, view = setup(path(5))
    set_phase_axioms(led, 3, view)
    assert {"T4", "T5", "T6", "T7"} <= led.active and "T1" not in led.active
    set_phase_axioms(led, 8, view)
    assert "T8" in led.active
    with pytest.raises(ValueError):
        set_phase_axioms(led, 7, view)


def test_t8_blocks_orange_next_to_live_vertex():
    g = path(6)
    st, led, view = setup(g)
    set_phase_axioms(led, 8, view)
    st.play_inplace(0)  # dominates 0, 1
    st.play_inplace(5)  # dominates 4, 5
    # 4 has the single undominated neighbor 3 (fine for P5), but 3 still sees undominated 2
    with pytest.raises(AxiomViolation, match="T8"):
        commit(RecolorTx({4: O}), led, view, full=True)
    st.play_inplace(2)  # now 3 has no undominated neighbor left
    commit(RecolorTx({4: O}), led, view, full=True)
    assert led.colors[4] == O


def test_minimum_color_and_recolor():
    st, led, view = setup(path(5))
    st.play_inplace(0)
    st.play_inplace(4)
    # 1 and 3 each see the undominated 2 and no undominated leaf or parent
    assert minimum_color(0, led, view) == R
    assert minimum_color(1, led, view) == O
    with pytest.raises(ValueError):
        recolor_to_minimum(led, view)
    set_phase_axioms(led, 9, view)
    tx = recolor_to_minimum(led, view)
    assert tx.changes[0] == R and tx.changes[1] == O and 2 not in tx.changes
    assert led.pi == 6 + 6 + 4 + 4
