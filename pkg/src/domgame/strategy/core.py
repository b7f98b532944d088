"""Phase controller for the Dominator strategy in the move-gift game.

The engine owns a private GameState (Dominator starts, move-gift rules), a color
ledger and a live taxonomy view. Callers alternate `move()` (Dominator) and
`observe(action)` (Staller). Every recoloring is committed through the ledger, so
axiom violations and point shortfalls surface as exceptions.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Callable, Optional, Union

from ..graph import Graph
from ..ledger import (AxiomViolation, Color, ColorLedger, G, R, W, Y, RecolorTx, ShortfallError, commit,
                      recolor_to_minimum, set_phase_axioms)
from ..rules import Action, GameState, Player, Variant
from ..taxonomy import ObservationError, Structure, View, check_observations

Changes = Union[dict, Callable[["Dominator"], dict]]

OPENING = 6  # phases 1..6 use reactive pairs


class StrategyError(RuntimeError):
    """The strategy could not produce a legal directive or broke an invariant."""

    def __init__(self, message: str, kind: str = "strategy", phase: int = 0, time: int = 0):
        self.kind, self.phase, self.time = kind, phase, time
        super().__init__(f"[{kind}] phase {phase}, t={time}: {message}")


class CheckpointError(StrategyError):
    pass


@dataclass
class Plan:
    """Coloring plan for a Staller move, optionally with Dominator's reaction."""

    kind: str  # "now" or "react"
    vertex: Optional[int]
    changes: Changes
    rule: str


def now(changes: Changes, rule: str) -> Plan:
    return Plan("now", None, changes, rule)


def react(v: int, changes: Changes, rule: str) -> Plan:
    return Plan("react", v, changes, rule)


@dataclass
class Directive:
    vertex: int
    changes: Optional[Changes]  # None: minimum recoloring (phases 9+)
    rule: str
    min_earn: Optional[int] = None
    script: object = None


class Dominator:
    """Strategy for the Dominator-start move-gift game on a graph with no reducible pattern left."""

    def __init__(self, g: Graph, substitute: Optional[dict] = None, full_validation: Optional[bool] = None,
                 observations: bool = True, trace: bool = True):
        self.graph = g
        self.st = Structure(g)
        self.state = GameState(g, Variant.MOVE_GIFT, Player.DOMINATOR)
        self.ledger = ColorLedger(g.n)
        self.view = View(self.st, self.state, self.ledger)
        self.substitute = dict(substitute or {})
        self.full = (g.n <= 64) if full_validation is None else full_validation
        self.observations = observations
        self.phase = 1
        self.pending: Optional[tuple[Plan, list]] = None
        self.script = None
        self.last_s: Optional[int] = None  # vertex of Staller's last play, None after a gift
        self.events: Optional[list] = [] if trace else None
        self.checkpoints: list[tuple[int, int]] = []
        self.transitions: list[tuple[int, int]] = [(1, 0)]
        self.move_touches: list[int] = []
        self.anchors = [u for u in range(g.n) if self.st.is_anchor[u]]
        self.parents = [p for p in range(g.n) if self.st.is_parent[p]]
        self._emit("start", None, rule="start")

    # ------------------------------------------------------------------ access
    @property
    def col(self) -> list:
        return self.ledger.colors

    @property
    def dom(self) -> list:
        return self.state.dominated

    @property
    def time(self) -> int:
        return self.state.time

    @property
    def over(self) -> bool:
        return self.state.over

    def fail(self, message: str, kind: str = "strategy") -> StrategyError:
        cls = CheckpointError if kind == "checkpoint" else StrategyError
        return cls(message, kind, self.phase, self.time)

    # ------------------------------------------------------------------ cloning
    def clone(self, trace: bool = False) -> "Dominator":
        c = copy.copy(self)
        c.state = self.state.copy()
        c.ledger = self.ledger.copy()
        c.view = self.view.rebind(c.state, c.ledger)
        c.events = (self.events[:] if self.events is not None else []) if trace else None
        c.checkpoints = self.checkpoints[:]
        c.transitions = self.transitions[:]
        c.move_touches = self.move_touches[:]
        c.script = copy.deepcopy(self.script)
        return c

    def fingerprint(self) -> tuple:
        return (self.phase, bytes(self.ledger.colors), bytes(self.state.dominated),
                bytes(self.state.played), self.state.turn.value, self.state.time,
                None if self.pending is None else (self.pending[0].vertex, self.pending[0].rule),
                None if self.script is None else self.script.key(), self.last_s)

    # ------------------------------------------------------------------ tracing
    def _emit(self, event: str, played, rule: str = "", recolors=None, delta: int = 0,
              checkpoint: bool = False, **extra) -> None:
        if self.events is None:
            return
        rec = {"event": event, "t": self.state.time, "phase": self.phase, "case_or_rule": rule,
               "played": played, "recolors": recolors or [], "delta": delta,
               "pi": self.ledger.pi, "checkpoint": checkpoint}
        rec.update(extra)
        self.events.append(rec)

    def header(self) -> dict:
        return {"event": "header", "n": self.graph.n, "edges": [list(e) for e in self.graph.edges],
                "substitute": {str(k): v for k, v in self.substitute.items()}}

    # ------------------------------------------------------------------ commits
    def commit(self, changes: dict, rule: str, min_earn: Optional[int] = None, extra=()) -> int:
        changes = {v: c for v, c in changes.items() if self.ledger.colors[v] != c}
        tx = RecolorTx(changes, min_earn, rule)
        before = self.ledger.pi
        try:
            commit(tx, self.ledger, self.view, full=self.full, extra=extra)
        except AxiomViolation as e:
            raise self.fail(f"{rule}: axiom violation {e}", "axiom") from e
        except ShortfallError as e:
            raise self.fail(str(e), "shortfall") from e
        d = self.ledger.pi - before
        if changes or min_earn is not None:
            self._emit("recolor", None, rule=rule, delta=d,
                       recolors=[[v, c.label] for v, c in sorted(changes.items())], min_earn=min_earn)
        return d

    def _resolve(self, changes: Changes) -> dict:
        return dict(changes(self)) if callable(changes) else dict(changes)

    def _auto_red(self, changes: dict, newly: list) -> dict:
        """From phase 7 on every unplayable vertex is colored red right away.

        Before that only leaves are, as a dominated leaf is always unplayable.
        """
        if self.phase < 7:
            isl = self.st.is_leaf
            for w in newly:
                if isl[w] and w not in changes and self.col[w] == W:
                    changes[w] = R
            return changes
        seen = set()
        for w in newly:
            seen.add(w)
            seen.update(self.view.nbrs(w))
        for v in seen:
            if changes.get(v, self.col[v]) != R and not self.view.playable(v):
                changes[v] = R
        return changes

    def _top_up(self, changes: dict, newly: list, need: Optional[int]) -> dict:
        """Before phase 7, a plan short of its minimum is extended greedily: red for vertices
        it made unplayable, then green or yellow for newly dominated white vertices.
        Each addition is kept only if the whole transaction still satisfies the axioms.
        A plan that breaks the axioms first gets all of those red vertices at once, since a
        vertex that lost its license may simply have become unplayable."""
        if need is None or self.phase >= 7:
            return changes
        col = self.col

        def gain(ch):
            return sum(col[v] - c for v, c in ch.items())

        near = set(newly)
        for w in newly:
            near.update(self.view.nbrs(w))
        dead = [v for v in sorted(near) if not self.view.playable(v)]
        if not self._valid(changes, newly):
            trial = dict(changes)
            trial.update({v: R for v in dead if changes.get(v, col[v]) != R})
            if not self._valid(trial, newly):
                return changes
            changes = trial
        if gain(changes) >= need:
            return changes
        cands = [(v, R) for v in dead]
        cands += [(w, c) for w in sorted(newly) if col[w] == W for c in (G, Y)]
        for v, c in cands:
            if changes.get(v, col[v]) <= c:
                continue
            trial = dict(changes)
            trial[v] = c
            if self._valid(trial, newly):
                changes = trial
                if gain(changes) >= need:
                    break
        return changes

    def _valid(self, changes: dict, extra) -> bool:
        led = self.ledger.copy()
        try:
            commit(RecolorTx(dict(changes)), led, self.view.rebind(self.state, led),
                   full=self.full, extra=extra)
        except AxiomViolation:
            return False
        return True

    def _final(self) -> None:
        self.pending = None
        self.script = None
        self.commit({v: R for v in range(self.graph.n) if self.col[v] != R}, "game-over")
        if self.ledger.pi != 6 * self.graph.n:
            raise self.fail(f"final pi {self.ledger.pi} != 6n", "final")

    def _play(self, v: int, player: Player, rule: str = "") -> list:
        actual = self.substitute.get(v, v)
        newly = self.state.play_inplace(actual)
        self._emit("move", {"player": player.value, "vertex": actual}, rule=rule,
                   newly=sorted(newly))
        return newly

    # ------------------------------------------------------------------ Staller
    def observe(self, action: Action) -> None:
        if self.state.over:
            raise self.fail("observe after game end")
        if self.state.turn is not Player.STALLER:
            raise self.fail("observe called on Dominator's turn")
        if action.is_gift:
            self.state.gift_inplace()
            self.last_s = None
            self._emit("gift", {"player": "S", "vertex": None}, rule="gift")
            return
        x = action.vertex
        if not self.state.playable(x):
            raise self.fail(f"Staller played unplayable vertex {x}")
        self.last_s = x
        plan = self._staller_plan(x)
        newly = self._play(x, Player.STALLER, plan.rule if plan else "")
        if self.state.over:
            self._final()
            return
        if plan is None:
            self._minimum("S-minimum", extra=newly)
        elif plan.kind == "now":
            changes = self._top_up(self._auto_red(self._resolve(plan.changes), newly), newly, 6)
            self.commit(changes, "S:" + plan.rule, min_earn=6, extra=newly)
        else:
            self.pending = (plan, newly)

    def _staller_plan(self, x: int) -> Optional[Plan]:
        from . import endgame, opening
        if self.script is not None:
            p = self.script.staller_plan(self, x)
            if p is not None:
                return p
        if self.phase <= OPENING:
            return opening.staller_plan(self, x)
        if self.phase <= 8:
            return endgame.staller_plan(self, x)
        return None

    def reaction_triggers(self) -> list[int]:
        """Playable vertices whose play by Staller would invoke a non-generic rule."""
        if self.state.over or self.phase > 8:
            return []
        out = []
        for x in range(self.graph.n):
            if self.state.playable(x):
                p = self._staller_plan(x)
                if p is not None and (p.kind == "react" or not p.rule.startswith("plain")):
                    out.append(x)
        return out

    # ------------------------------------------------------------------ Dominator
    def move(self) -> Optional[int]:
        if self.state.over:
            return None
        if self.state.turn is not Player.DOMINATOR:
            raise self.fail("move requested on Staller's turn")
        t0 = self.view.touches
        try:
            return self._move()
        finally:
            self.move_touches.append(self.view.touches - t0)

    def _move(self) -> Optional[int]:
        if self.pending is not None:
            plan, s_newly = self.pending
            self.pending = None
            d = Directive(plan.vertex, plan.changes, "D:" + plan.rule, 20)
            return self._execute(d, s_newly)
        if self.script is not None:
            d = self.script.next(self)
            if d is not None:
                return self._execute(d)
            self.script = None
        self._stable_point()
        from . import endgame, opening
        while True:
            if self.phase <= OPENING:
                d = opening.directive(self)
            else:
                d = endgame.directive(self)
            if d is not None:
                return self._execute(d)
            self._advance()

    def _execute(self, d: Directive, extra=()) -> int:
        newly = self._play(d.vertex, Player.DOMINATOR, d.rule)
        actual = self.state.move_log[-1][2].vertex
        if self.state.over:
            self._final()
            return actual
        if d.changes is None:
            self._minimum(d.rule, d.min_earn, extra=newly)
        else:
            changes = self._top_up(self._auto_red(self._resolve(d.changes), newly),
                                   list(newly) + list(extra), d.min_earn)
            self.commit(changes, d.rule, d.min_earn, extra=list(newly) + list(extra))
        if d.script is not None:
            self.script = d.script
        if self.phase <= OPENING and self.ledger.pi < 10 * self.time + 4:
            raise self.fail(f"pi={self.ledger.pi} < 10t+4 after Dominator move", "checkpoint")
        return actual

    def _minimum(self, rule: str, min_earn: Optional[int] = None, extra=()) -> int:
        before = self.ledger.pi
        try:
            tx = recolor_to_minimum(self.ledger, self.view, commit_tx=False)
            tx.rule, tx.min_earn = rule, min_earn
            return self.commit(tx.changes, rule, min_earn, extra=extra)
        finally:
            assert self.ledger.pi >= before

    def _stable_point(self) -> None:
        if self.phase == 6:
            from .opening import p6_prelude
            p6_prelude(self)
        if self.phase >= 9:
            self._minimum("minimum")
        self.checkpoint()

    def checkpoint(self) -> None:
        t, pi = self.time, self.ledger.pi
        if pi < 10 * t:
            raise self.fail(f"checkpoint pi={pi} < 10t={10 * t}", "checkpoint")
        self.checkpoints.append((t, pi))
        self._emit("checkpoint", None, rule="checkpoint", checkpoint=True)

    def _advance(self) -> None:
        done = self.phase
        if done >= 11:
            raise self.fail("no directive in the final phase")
        if self.observations:
            try:
                check_observations(self.view, done)
            except ObservationError as e:
                raise self.fail(str(e), "observation") from e
        new = done + 1
        if new == 3:
            snap = self.view.freeze_snapshot()
            self._emit("snapshot", None, rule="snapshot", snapshot=snap.as_dict())
        try:
            set_phase_axioms(self.ledger, new, self.view)
        except AxiomViolation as e:
            raise self.fail(f"entering phase {new}: {e}", "axiom") from e
        self.phase = new
        self.transitions.append((new, self.time))
        self._emit("phase", None, rule=f"phase-{new}")
        if new == 6:
            from .opening import p6_prelude
            p6_prelude(self)
        if new >= 9:
            self._minimum("minimum")

    def try_directive(self, d: Directive) -> Optional[StrategyError]:
        """Dry-run a directive on a clone; returns the error it would raise, if any."""
        c = self.clone()
        c.observations = False
        try:
            c._execute(d)
        except StrategyError as e:
            return e
        return None
