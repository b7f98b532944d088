"""Staller policies and the exhaustive worst-case search."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import Graph
from .rules import GIFT, Action, GameState, Player, Variant, legal_actions


class Staller:
    name = "staller"

    def choose(self, state: GameState, player=None) -> Action:
        raise NotImplementedError


class RandomStaller(Staller):
    """Uniform over legal actions; gifts (when allowed) with probability `gift_p`."""

    name = "random"

    def __init__(self, seed: int = 0, gift_p: float = 0.1):
        self.rng = random.Random(seed)
        self.gift_p = gift_p

    def choose(self, state, player=None) -> Action:
        acts = [a for a in legal_actions(state) if not a.is_gift]
        if state.variant is Variant.MOVE_GIFT and self.rng.random() < self.gift_p:
            return GIFT
        return self.rng.choice(acts)


class GreedyStaller(Staller):
    """Plays a vertex dominating the fewest new vertices (lowest id on ties); never gifts."""

    name = "greedy"

    def choose(self, state, player=None) -> Action:
        best = min((v for v in range(state.graph.n) if state.playable(v)),
                   key=lambda v: (state.new_count(v), v))
        return Action.play(best)


class GiftHappyStaller(Staller):
    name = "gift"

    def __init__(self, seed: int = 0, p: float = 0.5):
        self.inner = RandomStaller(seed, gift_p=p)

    def choose(self, state, player=None) -> Action:
        return self.inner.choose(state, player)


class ReactionStressStaller(Staller):
    """Prefers moves that trigger a reactive rule of the strategy, else random."""

    name = "stress"

    def __init__(self, seed: int = 0, gift_p: float = 0.05):
        self.rng = random.Random(seed)
        self.fallback = RandomStaller(seed + 1, gift_p)

    def choose(self, state, player=None) -> Action:
        trig = getattr(player, "reaction_triggers", None)
        cands = [v for v in (trig() if trig else []) if state.playable(v)]
        if cands:
            return Action.play(self.rng.choice(cands))
        return self.fallback.choose(state, player)


STALLERS = {
    "random": RandomStaller,
    "greedy": lambda seed=0: GreedyStaller(),
    "gift": GiftHappyStaller,
    "stress": ReactionStressStaller,
}


def make_staller(name: str, seed: int = 0) -> Staller:
    if name not in STALLERS:
        raise ValueError(f"unknown staller {name!r}; choose from {sorted(STALLERS)} or worst")
    return STALLERS[name](seed=seed)


# ---------------------------------------------------------------- worst case

class SearchLimit(RuntimeError):
    pass


@dataclass
class WorstCase:
    moves: int
    line: list = field(default_factory=list)  # [(player, vertex or None)]
    nodes: int = 0


def worst_case_search(g: Graph, factory: Callable[[], object], start: str = "d",
                      max_nodes: Optional[int] = None) -> WorstCase:
    """Longest game over every Staller reply (gifts included) against a deterministic player.

    `factory()` builds a fresh player; players are cloned at Staller branch points.
    Exceptions raised by the player propagate, so a violation anywhere in the tree fails.
    """
    memo: dict = {}
    count = [0]
    cap = 2 * g.n

    def turn_of(p) -> Player:
        return p.state.turn

    def rec(p) -> tuple[int, list]:
        if p.over:
            return 0, []
        count[0] += 1
        if p.state.time > cap:
            raise RuntimeError(f"game exceeded the safety cap of {cap} moves")
        if max_nodes is not None and count[0] > max_nodes:
            raise SearchLimit(f"more than {max_nodes} nodes")
        key = p.fingerprint()
        hit = memo.get(key)
        if hit is not None:
            return hit
        if turn_of(p) is Player.DOMINATOR:
            v = p.move()
            sub, line = rec(p)
            res = (1 + sub, [("D", v)] + line)
        else:
            best = (-1, [])
            for a in legal_actions(p.state):
                q = p.clone()
                q.observe(a)
                sub, line = rec(q)
                val = sub + (0 if a.is_gift else 1)
                if val > best[0]:
                    best = (val, [("S", a.vertex)] + line)
            res = best
        memo[key] = res
        return res

    p = factory()
    moves, line = rec(p)
    return WorstCase(moves, line, count[0])
