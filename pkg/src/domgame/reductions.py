"""Reductions to graphs without isolated edges, two-leaf parents or anchors with three
dependent parents, plus the Staller-start adapter.

Every player here speaks the same protocol as the strategy engine: `move()` for
Dominator's turn, `observe(action)` for Staller's, `clone()`, `fingerprint()` and
`over`. Wrappers keep the real game state and run an inner player on a smaller
graph with its own ids. The inner game never has more dominated vertices than the
real one, so every real Staller move maps to a legal inner move or to a gift.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import Graph
from .rules import GIFT, Action, GameState, Player, Variant
from .strategy import Dominator


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "isolated-edge", "two-leaf-parent", "triple-anchor"
    vertices: tuple

    def as_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}


# ---------------------------------------------------------------- detection

def find_isolated_edge(g: Graph) -> Optional[tuple[int, int]]:
    for u, v in g.edges:
        if g.deg[u] == 1 and g.deg[v] == 1:
            return (u, v)
    return None


def find_two_leaf_parent(g: Graph) -> Optional[tuple[int, list[int]]]:
    for x in range(g.n):
        leaves = [w for w in g.adj[x] if g.deg[w] == 1]
        if len(leaves) >= 2 and g.deg[x] > 1:
            return (x, leaves)
    return None


def find_triple_anchor(g: Graph) -> Optional[tuple[int, list[tuple[int, int]]]]:
    """An anchor u with three dependent parents, as (u, [(parent, leaf)] * 3)."""
    deg, adj = g.deg, g.adj
    for u in range(g.n):
        if deg[u] == 1:
            continue
        pairs = []
        for p in adj[u]:
            if deg[p] == 2:
                lf = adj[p][0] if adj[p][0] != u else adj[p][1]
                if deg[lf] == 1:
                    pairs.append((p, lf))
        if len(pairs) >= 3:
            return (u, pairs[:3])
    return None


def reduce(g: Graph) -> list[ReductionStep]:
    """The chain of reductions applied before the strategy engine takes over (D-start)."""
    steps = []
    while g.n:
        e = find_isolated_edge(g)
        if e:
            steps.append(ReductionStep("isolated-edge", e))
            g, _ = g.induced([v for v in range(g.n) if v not in e])
            continue
        t = find_two_leaf_parent(g)
        if t:
            x, leaves = t
            steps.append(ReductionStep("two-leaf-parent", (x, *leaves)))
            break  # continues as a Staller-start game, which depends on Staller's move
        a = find_triple_anchor(g)
        if a:
            u, pairs = a
            steps.append(ReductionStep("triple-anchor", (u,) + tuple(v for pr in pairs for v in pr)))
            g, _ = _triple_graph(g, u, pairs)
            continue
        break
    return steps


def _triple_graph(g: Graph, u: int, pairs) -> tuple[Graph, dict]:
    drop = {v for pr in pairs for v in pr}
    keep = [v for v in range(g.n) if v not in drop]
    h, fwd = g.induced(keep)
    v = h.n
    h2 = Graph(h.n + 1, list(h.edges) + [(fwd[u], v)])
    return h2, fwd


# ---------------------------------------------------------------- players

class _Base:
    """Real game state bookkeeping shared by the wrappers."""

    def __init__(self, g: Graph, starter: Player = Player.DOMINATOR):
        self.graph = g
        self.state = GameState(g, Variant.MOVE_GIFT, starter)

    @property
    def over(self) -> bool:
        return self.state.over

    def clone(self):
        c = copy.copy(self)
        c.state = self.state.copy()
        for name in ("inner",):
            if getattr(self, name, None) is not None:
                setattr(c, name, getattr(self, name).clone())
        return c

    def _real_play(self, v: int) -> None:
        self.state.play_inplace(v)

    def _real_observe(self, a: Action) -> None:
        if a.is_gift:
            self.state.gift_inplace()
        else:
            self.state.play_inplace(a.vertex)

    def dominators(self) -> Iterator[Dominator]:
        inner = getattr(self, "inner", None)
        if inner is not None:
            yield from inner.dominators()

    def reaction_triggers(self) -> list[int]:
        inner = getattr(self, "inner", None)
        if inner is None or inner.over:
            return []
        bwd = getattr(self, "bwd", None)
        out = inner.reaction_triggers()
        return [bwd[v] for v in out] if bwd is not None else out


def _forward(inner, fwd: dict, a: Action) -> None:
    """Hand a real Staller action to the inner player (as a gift when it has no inner meaning)."""
    if inner.over:
        return
    if a.is_gift or a.vertex not in fwd:
        inner.observe(GIFT)
        return
    h = fwd[a.vertex]
    inner.observe(Action.play(h) if inner.state.playable(h) else GIFT)


class EmptyPlayer(_Base):
    def move(self) -> Optional[int]:
        return None

    def observe(self, a: Action) -> None:
        raise RuntimeError("no moves on the empty graph")

    def fingerprint(self) -> tuple:
        return ("empty",)


class EngineWrapper(_Base):
    """Direct use of the strategy engine; ids are the graph's own."""

    def __init__(self, g: Graph, **kw):
        super().__init__(g)
        self.inner = Dominator(g, **kw)
        self.state = self.inner.state

    def clone(self):
        c = copy.copy(self)
        c.inner = self.inner.clone()
        c.state = c.inner.state
        return c

    def move(self) -> Optional[int]:
        return self.inner.move()

    def observe(self, a: Action) -> None:
        self.inner.observe(a)

    def fingerprint(self) -> tuple:
        return ("engine",) + self.inner.fingerprint()

    def dominators(self):
        yield self.inner

    def reaction_triggers(self) -> list[int]:
        return self.inner.reaction_triggers()


class IsolatedEdgeWrapper(_Base):
    """Staller moves on the edge xy are gifts to the game on G - x - y."""

    def __init__(self, g: Graph, edge: tuple[int, int], **kw):
        super().__init__(g)
        self.edge = edge
        h, fwd = g.induced([v for v in range(g.n) if v not in edge])
        self.fwd, self.bwd = fwd, _inverse(fwd, h.n)
        self.inner = build_player(h, **kw)

    def move(self) -> Optional[int]:
        if self.over:
            return None
        if self.inner.over:
            v = self.edge[0]
        else:
            v = self.bwd[self.inner.move()]
        self._real_play(v)
        return v

    def observe(self, a: Action) -> None:
        self._real_observe(a)
        _forward(self.inner, self.fwd, a)

    def fingerprint(self) -> tuple:
        return ("edge", bytes(self.state.dominated), self.inner.fingerprint())


class StallerStartAdapter(_Base):
    """Staller-start game: after Staller's first move x, play Dominator-start on
    G - x - (vertices isolated by removing x). A first gift means plain Dominator-start."""

    def __init__(self, g: Graph, **kw):
        super().__init__(g, Player.STALLER)
        self.kw = kw
        self.inner = None
        self.fwd: dict = {}
        self.bwd: Optional[list] = None
        self.first: Optional[Action] = None

    def observe(self, a: Action) -> None:
        self._real_observe(a)
        if self.first is None:
            self.first = a
            if a.is_gift:
                h, fwd = self.graph, {v: v for v in range(self.graph.n)}
            else:
                x = a.vertex
                keep = [v for v in range(self.graph.n) if v != x and any(w != x for w in self.graph.adj[v])]
                h, fwd = self.graph.induced(keep)
            self.fwd, self.bwd = fwd, _inverse(fwd, h.n)
            self.inner = build_player(h, **self.kw)
            return
        _forward(self.inner, self.fwd, a)

    def move(self) -> Optional[int]:
        if self.over:
            return None
        if self.inner is None or self.inner.over:
            v = next(v for v in range(self.graph.n) if not self.state.dominated[v])
        else:
            v = self.bwd[self.inner.move()]
        self._real_play(v)
        return v

    def fingerprint(self) -> tuple:
        inner = None if self.inner is None else self.inner.fingerprint()
        return ("sstart", repr(self.first), bytes(self.state.dominated), inner)


class TwoLeafWrapper(_Base):
    """Play the two-leaf parent x first, then Staller-start on G - x - leaves(x)."""

    def __init__(self, g: Graph, x: int, **kw):
        super().__init__(g)
        self.x = x
        keep = [v for v in range(g.n) if v != x and any(w != x for w in g.adj[v])]
        h, fwd = g.induced(keep)
        self.fwd, self.bwd = fwd, _inverse(fwd, h.n)
        self.inner = StallerStartAdapter(h, **kw)

    def move(self) -> Optional[int]:
        if self.over:
            return None
        if not self.state.played[self.x]:
            v = self.x
        elif self.inner.over:
            v = next(v for v in range(self.graph.n) if not self.state.dominated[v])
        else:
            v = self.bwd[self.inner.move()]
        self._real_play(v)
        return v

    def observe(self, a: Action) -> None:
        self._real_observe(a)
        _forward(self.inner, self.fwd, a)

    def fingerprint(self) -> tuple:
        return ("twoleaf", bytes(self.state.dominated), self.inner.fingerprint())


class TripleWrapper(_Base):
    """Anchor u with dependent parents x, y, z: play on H = G - gadget + a new leaf v at u.

    Staller's first move into the gadget is answered inside it; later gadget moves
    are gifts or count as playing v in H.
    """

    def __init__(self, g: Graph, u: int, pairs: list[tuple[int, int]], **kw):
        super().__init__(g)
        self.u, self.pairs = u, list(pairs)
        h, fwd = _triple_graph(g, u, pairs)
        self.fwd = dict(fwd)
        self.bwd = _inverse(fwd, h.n)
        self.v = h.n - 1
        self.bwd[self.v] = u  # Dominator plays u wherever the inner strategy plays v
        self.gadget = {w: i for i, pr in enumerate(pairs) for w in pr}
        self.entered = False
        self.inner = build_player(h, **kw)

    def _pair_open(self, i: int) -> bool:
        p, lf = self.pairs[i]
        return not self.state.dominated[lf]

    def move(self) -> Optional[int]:
        if self.over:
            return None
        if self.pending_answer is not None:
            v = self.pending_answer
            self.pending_answer = None
        elif self.inner.over:
            i = next(i for i in range(3) if self._pair_open(i))
            v = self.pairs[i][0]
        else:
            v = self.bwd[self.inner.move()]
        self._real_play(v)
        return v

    pending_answer: Optional[int] = None

    def observe(self, a: Action) -> None:
        self._real_observe(a)
        if a.is_gift or a.vertex not in self.gadget:
            _forward(self.inner, self.fwd, a)
            return
        i = self.gadget[a.vertex]
        if not self.entered and not self.inner.over:
            self.entered = True
            other = next((j for j in range(3) if j != i and self._pair_open(j)), None)
            if other is not None:
                self.pending_answer = self.pairs[other][0]
                return
        if self.inner.over:
            return
        p, lf = self.pairs[i]
        if a.vertex == p and self.inner.state.playable(self.v):
            self.inner.observe(Action.play(self.v))
        else:
            self.inner.observe(GIFT)

    def fingerprint(self) -> tuple:
        return ("triple", bytes(self.state.dominated), self.entered, self.pending_answer,
                self.inner.fingerprint())


def _inverse(fwd: dict, size: int) -> list:
    bwd = [0] * size
    for a, b in fwd.items():
        bwd[b] = a
    return bwd


def build_player(g: Graph, start: str = "d", **kw):
    """Player for the move-gift game on any isolate-free graph; start 'd' or 's'."""
    if start == "s":
        return StallerStartAdapter(g, **kw)
    if g.n == 0:
        return EmptyPlayer(g)
    if g.isolated():
        raise ValueError("graph has an isolated vertex")
    e = find_isolated_edge(g)
    if e:
        return IsolatedEdgeWrapper(g, e, **kw)
    t = find_two_leaf_parent(g)
    if t:
        return TwoLeafWrapper(g, t[0], **kw)
    a = find_triple_anchor(g)
    if a:
        return TripleWrapper(g, a[0], a[1], **kw)
    return EngineWrapper(g, **kw)
