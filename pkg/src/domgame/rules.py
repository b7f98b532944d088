"""Domination game state machine: standard rules and the move-gift variant."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .graph import Graph


class Player(Enum):
    DOMINATOR = "D"
    STALLER = "S"

    @property
    def other(self) -> "Player":
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR


class Variant(Enum):
    STANDARD = "standard"
    MOVE_GIFT = "gift"


class IllegalAction(ValueError):
    pass


class GameOver(RuntimeError):
    pass


@dataclass(frozen=True)
class Action:
    kind: str  # "play" or "gift"
    vertex: Optional[int] = None

    @staticmethod
    def play(v: int) -> "Action":
        return Action("play", v)

    @property
    def is_gift(self) -> bool:
        return self.kind == "gift"

    def __repr__(self) -> str:
        return "Gift" if self.is_gift else f"Play({self.vertex})"


GIFT = Action("gift")


class GameState:
    """Mutable game position; `apply_action` works on a copy, `play_inplace` does not."""

    __slots__ = ("graph", "dominated", "played", "turn", "time", "variant", "starter",
                 "move_log", "undominated_count")

    def __init__(self, graph: Graph, variant: Variant = Variant.MOVE_GIFT,
                 starter: Player = Player.DOMINATOR):
        self.graph = graph
        self.dominated = [False] * graph.n
        self.played = [False] * graph.n
        self.turn = starter
        self.time = 0
        self.variant = variant
        self.starter = starter
        self.move_log: list[tuple[int, Player, Action]] = []
        self.undominated_count = graph.n

    def copy(self) -> "GameState":
        s = GameState.__new__(GameState)
        s.graph = self.graph
        s.dominated = self.dominated[:]
        s.played = self.played[:]
        s.turn = self.turn
        s.time = self.time
        s.variant = self.variant
        s.starter = self.starter
        s.move_log = self.move_log[:]
        s.undominated_count = self.undominated_count
        return s

    __copy__ = copy

    def __deepcopy__(self, memo):
        return self.copy()

    @property
    def over(self) -> bool:
        return self.undominated_count == 0

    def new_count(self, v: int) -> int:
        """Number of vertices a play of v would newly dominate."""
        dom = self.dominated
        return (not dom[v]) + sum(1 for w in self.graph.adj[v] if not dom[w])

    def playable(self, v: int) -> bool:
        if not self.dominated[v]:
            return True
        dom = self.dominated
        return any(not dom[w] for w in self.graph.adj[v])

    def play_inplace(self, v: int) -> list[int]:
        """Play v without legality checks; returns the newly dominated vertices."""
        dom = self.dominated
        newly = []
        if not dom[v]:
            dom[v] = True
            newly.append(v)
        for w in self.graph.adj[v]:
            if not dom[w]:
                dom[w] = True
                newly.append(w)
        self.undominated_count -= len(newly)
        self.played[v] = True
        self.move_log.append((self.time, self.turn, Action.play(v)))
        self.time += 1
        self.turn = self.turn.other
        return newly

    def gift_inplace(self) -> None:
        self.move_log.append((self.time, self.turn, GIFT))
        self.turn = Player.DOMINATOR

    def dominated_mask(self) -> int:
        mask = 0
        for v, d in enumerate(self.dominated):
            if d:
                mask |= 1 << v
        return mask


def new_game(g: Graph, variant: Variant = Variant.MOVE_GIFT,
             starter: Player = Player.DOMINATOR) -> GameState:
    iso = g.isolated()
    if iso:
        raise ValueError(f"graph has isolated vertex {iso[0]}")
    return GameState(g, variant, starter)


def is_over(s: GameState) -> bool:
    return s.over


def legal_actions(s: GameState) -> list[Action]:
    """Legal actions in increasing vertex order (Gift last when allowed)."""
    if s.over:
        raise GameOver("game already over")
    if s.variant is Variant.MOVE_GIFT and s.turn is Player.DOMINATOR:
        return [Action.play(v) for v in range(s.graph.n)]
    acts = [Action.play(v) for v in range(s.graph.n) if s.playable(v)]
    if s.variant is Variant.MOVE_GIFT:
        acts.append(GIFT)
    return acts


def is_legal(s: GameState, a: Action) -> bool:
    if s.over:
        return False
    if a.is_gift:
        return s.variant is Variant.MOVE_GIFT and s.turn is Player.STALLER
    v = a.vertex
    if v is None or not (0 <= v < s.graph.n):
        return False
    if s.variant is Variant.MOVE_GIFT and s.turn is Player.DOMINATOR:
        return True
    return s.playable(v)


def apply_action(s: GameState, a: Action) -> GameState:
    if not is_legal(s, a):
        raise IllegalAction(f"{a!r} is not legal for {s.turn.name} at t={s.time}")
    out = s.copy()
    if a.is_gift:
        out.gift_inplace()
    else:
        out.play_inplace(a.vertex)
    return out


def unplayable_count(s: GameState) -> int:
    return sum(1 for v in range(s.graph.n) if not s.playable(v))


def staller_start_adapter(g: Graph, first_staller_move: int) -> tuple[Graph, dict[int, int]]:
    """H = G - x - (vertices isolated by the removal); map from G ids to H ids."""
    x = first_staller_move
    keep = [v for v in range(g.n) if v != x and any(w != x for w in g.adj[v])]
    return g.induced(keep)


def move_log_json(s: GameState) -> str:
    out = []
    for t, player, act in s.move_log:
        rec = {"t": t, "player": player.value, "action": act.kind}
        if not act.is_gift:
            rec["vertex"] = act.vertex
        out.append(rec)
    return json.dumps(out)


def replay_move_log(g: Graph, text: str, variant: Variant = Variant.MOVE_GIFT,
                    starter: Player = Player.DOMINATOR) -> GameState:
    s = new_game(g, variant, starter)
    for rec in json.loads(text):
        a = GIFT if rec["action"] == "gift" else Action.play(rec["vertex"])
        s = apply_action(s, a)
    return s
