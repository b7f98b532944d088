from domgame.graph import Graph, hat, complete, path
from domgame.ledger import ColorLedger, G, R, W
from domgame.rules import GameState
from domgame.taxonomy import OBSERVATIONS, ObservationError, Structure, check_observations, classify

from conftest import trident_graph


def test_structure_of_hat():
    st = Structure(hat(complete(2)))
    assert st.is_anchor[0] and st.is_anchor[1]
    assert sorted(st.deps[0]) == [2, 4]
    assert all(st.is_leaf[v] for v in (3, 5, 7, 9))
    assert st.leaf_of[2] == 3 and st.parent_of[3] == 2


def test_trident_classification():
    g = trident_graph()
    st = Structure(g)
    assert [z for z in range(g.n) if st.is_ab[z]] == [1, 6, 11]
    assert all(st.ab_owners[z] == (0,) for z in (1, 6, 11))
    view = classify(g, GameState(g), ColorLedger(g.n))
    assert view.bridgehead(0) and view.trident(0) and not view.semi_trident(0)
    snap = view.freeze_snapshot()
    assert 0 in snap.A and 0 in snap.R
    assert snap.B == frozenset()


def test_safe_and_pseudo_safe():
    g = trident_graph()
    state, led = GameState(g), ColorLedger(g.n)
    view = classify(g, state, led)
    assert not view.safe(1)
    state.play_inplace(0)  # dominates 0, 1, 6, 11; bridge 1 still sees anchor 3
    assert view.pseudo_safe(1)
    state.play_inplace(3)
    assert view.safe(1)


def test_p4_component_is_mutual_anchor():
    st = Structure(path(4))
    assert st.is_dep[1] and st.is_dep[2] and st.is_anchor[1] and st.is_anchor[2]


def test_observation_failure_reports_witness():
    # an anchor whose leaf... the "anchor has no white leaf" observation: a dominated anchor
    # owning a white leaf after phase 1 is a witness
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (2, 4)])  # 2 has a leaf 3 and dependent parent 1
    state, led = GameState(g), ColorLedger(g.n)
    view = classify(g, state, led)
    assert view.st.is_anchor[2] and view.leaf_white(2)
    try:
        check_observations(view, 1)
    except ObservationError as e:
        assert e.witnesses
    else:
        raise AssertionError("expected an observation failure")


def test_observation_table_order():
    phases = [p for p, _, _ in OBSERVATIONS]
    assert phases == sorted(phases)
