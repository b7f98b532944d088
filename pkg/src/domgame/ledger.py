"""Vertex colors, the earned-points total and the coloring axioms.

Axiom ids: P1..P7 are permanent. Temporary ids, by the phase that keeps them:
T1, T2 (phase 1), T3 (phase 2), T4..T7 (phase 3), T4p (phases 4-5), T4u (phase 6),
T8 (phase 8).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Optional


class Color(IntEnum):
    """Value is the point worth of the color."""

    RED = 0
    ORANGE = 2
    BLUE = 3
    GREEN = 4
    YELLOW = 5
    WHITE = 6

    @property
    def points(self) -> int:
        return int(self)

    @property
    def label(self) -> str:
        return self.name.lower()


W, Y, G, B, O, R = Color.WHITE, Color.YELLOW, Color.GREEN, Color.BLUE, Color.ORANGE, Color.RED
CITRUS = (Y, G)

PERMANENT = ("P1", "P2", "P3", "P4", "P5", "P6", "P7")
PHASE_AXIOMS: dict[int, tuple[str, ...]] = {
    1: ("T1", "T2"),
    2: ("T3",),
    3: ("T4", "T5", "T6", "T7"),
    4: ("T4p",),
    5: ("T4p",),
    6: ("T4u",),
    7: (),
    8: ("T8",),
    9: (),
    10: (),
    11: (),
}


@dataclass
class Violation:
    axiom: str
    vertices: list
    phase: int = 0
    time: int = 0
    detail: str = ""

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "vertices": list(self.vertices), "phase": self.phase,
                "time": self.time, "detail": self.detail}

    def __str__(self) -> str:
        s = f"{self.axiom} at {self.vertices} (phase {self.phase}, t={self.time})"
        return s + (f": {self.detail}" if self.detail else "")


class AxiomViolation(Exception):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations[:5]))


class ShortfallError(Exception):
    pass


@dataclass
class RecolorTx:
    changes: dict[int, Color] = field(default_factory=dict)
    min_earn: Optional[int] = None
    rule: str = ""

    def set(self, v: int, c: Color) -> "RecolorTx":
        self.changes[v] = c
        return self


class ColorLedger:
    __slots__ = ("colors", "pi", "phase", "active")

    def __init__(self, n: int):
        self.colors: list[Color] = [W] * n
        self.pi = 0
        self.phase = 1
        self.active: frozenset[str] = frozenset(PERMANENT + PHASE_AXIOMS[1])

    def copy(self) -> "ColorLedger":
        c = ColorLedger.__new__(ColorLedger)
        c.colors = self.colors[:]
        c.pi = self.pi
        c.phase = self.phase
        c.active = self.active
        return c

    def __deepcopy__(self, memo):
        return self.copy()


def delta(tx: RecolorTx, ledger: ColorLedger) -> int:
    cols = ledger.colors
    return sum(cols[v] - c for v, c in tx.changes.items())


# ------------------------------------------------------------------ validation
#
# The checks take a taxonomy View (duck-typed) giving structure, domination and colors.


def _transition_violations(tx: RecolorTx, ledger: ColorLedger, view) -> list[Violation]:
    out = []
    st = view.st
    cols = ledger.colors
    for v, new in tx.changes.items():
        old = cols[v]
        if old == new:
            continue
        if old == Y and view.adjacent_undominated_parent(v):
            out.append(Violation("P4", [v], detail="yellow vertex next to an undominated parent"))
        if new == W:
            if st.is_leaf[v]:
                out.append(Violation("P7", [v], detail="leaf re-whitened"))
            lf = st.leaf_of[v]
            if lf >= 0 and tx.changes.get(lf, cols[lf]) == W:
                out.append(Violation("P7", [v, lf], detail="parent re-whitened while its leaf is white"))
    return out


def vertex_violations(v: int, ledger: ColorLedger, view) -> list[Violation]:
    """All active axioms that fail at vertex v (state axioms only)."""
    out = []
    c = ledger.colors[v]
    act = ledger.active
    phase = ledger.phase
    dom = view.dom
    if not dom[v] and c != W:
        out.append(Violation("P1", [v]))
    if c == R and view.playable(v):
        out.append(Violation("P2", [v]))
    if c not in (W, Y, G) and view.adjacent_undominated_leaf_or_parent(v):
        out.append(Violation("P3", [v]))
    if c == O and view.undominated_neighbor_count(v) > 1:
        out.append(Violation("P5", [v]))
    if (c == Y and phase < 5) or (c in (B, O) and phase < 8):
        out.append(Violation("P6", [v], detail=f"{c.label} in phase {phase}"))
    if c == G:
        for ax in ("T1", "T3", "T4", "T4p", "T4u"):
            if ax in act and not view.green_allowed(ax, v):
                out.append(Violation(ax, [v], detail="green not permitted"))
    if "T2" in act and view.st.is_anchor[v] and not view.t2_ok(v):
        out.append(Violation("T2", [v]))
    if "T5" in act and view.in_R(v) and not view.trident(v) and not dom[v]:
        out.append(Violation("T5", [v]))
    if "T6" in act and view.semi_trident(v):
        w = view.t6_witness(v)
        if w is not None:
            out.append(Violation("T6", [v, w]))
    if "T7" in act and view.semi_trident(v):
        w = view.t7_witness(v)
        if w is not None:
            out.append(Violation("T7", [v] + list(w)))
    if "T8" in act and c == O:
        for w in view.st.adj[v]:
            if not dom[w] and view.undominated_neighbor_count(w) > 0:
                out.append(Violation("T8", [v, w]))
    return out


def validate(ledger: ColorLedger, view, vertices: Optional[Iterable[int]] = None) -> list[Violation]:
    verts = range(len(ledger.colors)) if vertices is None else sorted(set(vertices))
    out = []
    for v in verts:
        out.extend(vertex_violations(v, ledger, view))
    for viol in out:
        viol.phase = ledger.phase
        viol.time = view.time
    return out


def commit(tx: RecolorTx, ledger: ColorLedger, view, full: bool = False,
           extra: Iterable[int] = ()) -> ColorLedger:
    """Apply tx atomically. Raises AxiomViolation or ShortfallError and leaves the ledger unchanged.

    Validation covers the radius-3 ball around changed vertices and `extra`
    (typically the newly dominated ones), or the whole graph when `full`.
    """
    d = delta(tx, ledger)
    if tx.min_earn is not None and d < tx.min_earn:
        raise ShortfallError(f"{tx.rule or 'tx'} earns {d} < required {tx.min_earn}")
    bad = _transition_violations(tx, ledger, view)
    if bad:
        for viol in bad:
            viol.phase, viol.time = ledger.phase, view.time
        raise AxiomViolation(bad)
    cols = ledger.colors
    old = {v: cols[v] for v in tx.changes}
    for v, c in tx.changes.items():
        cols[v] = c
    t0 = getattr(view, "touches", 0)
    scope = None if full else view.ball(list(tx.changes) + list(extra), 3)
    bad = validate(ledger, view, scope)
    if hasattr(view, "touches"):
        view.touches = t0  # validation is a runtime check, not directive work
    if bad:
        for v, c in old.items():
            cols[v] = c
        raise AxiomViolation(bad)
    ledger.pi += d
    return ledger


def set_phase_axioms(ledger: ColorLedger, phase: int, view) -> ColorLedger:
    if phase < ledger.phase:
        raise ValueError("phases never repeat")
    prev = (ledger.phase, ledger.active)
    ledger.phase = phase
    ledger.active = frozenset(PERMANENT + PHASE_AXIOMS[phase])
    bad = validate(ledger, view)
    if bad:
        ledger.phase, ledger.active = prev
        raise AxiomViolation(bad)
    return ledger


def minimum_color(v: int, ledger: ColorLedger, view) -> Color:
    """Cheapest color for v under the permanent axioms, other vertices held fixed."""
    if not view.dom[v]:
        return W
    if not view.playable(v):
        return R
    cur = ledger.colors[v]
    if view.adjacent_undominated_leaf_or_parent(v):
        if cur == Y and view.adjacent_undominated_parent(v):
            return Y
        return G if cur in (W, Y, G) else cur
    if view.undominated_neighbor_count(v) <= 1:
        return O
    return B


def recolor_to_minimum(ledger: ColorLedger, view, commit_tx: bool = True) -> RecolorTx:
    """Drop every vertex to its cheapest legal color (phases 9 onward)."""
    if ledger.phase < 9:
        raise ValueError("recolor_to_minimum is only used from phase 9 on")
    tx = RecolorTx(rule="minimum")
    cols = ledger.colors
    for _ in range(6):
        changed = False
        for v in view.scan(range(len(cols))):
            c = minimum_color(v, ledger, view)
            if c != tx.changes.get(v, cols[v]) and c < tx.changes.get(v, cols[v]):
                tx.changes[v] = c
                changed = True
        if not changed:
            break
    if commit_tx and tx.changes:
        commit(tx, ledger, view)
    return tx
