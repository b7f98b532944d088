"""Exact game domination numbers by memoized minimax over dominated-set bitmasks."""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .graph import Graph

DEFAULT_CAP = 16


class OracleCapExceeded(ValueError):
    pass


@dataclass
class OracleResult:
    value: int
    variant: str  # "d" (Dominator starts) or "s" (Staller starts)
    explored_states: int
    optimal_first_moves: list[int] = field(default_factory=list)


def _closed_masks(g: Graph) -> list[int]:
    masks = []
    for v in range(g.n):
        m = 1 << v
        for w in g.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


class _Search:
    def __init__(self, g: Graph, prune: bool):
        self.g = g
        self.full = (1 << g.n) - 1
        self.closed = _closed_masks(g)
        self.prune = prune
        self.memo: dict[tuple[int, bool], int] = {}

    def children(self, mask: int) -> list[int]:
        """Distinct successor masks; with pruning, sorted by new-domination count."""
        seen = {}
        for c in self.closed:
            nxt = mask | c
            if nxt != mask and nxt not in seen:
                seen[nxt] = bin(nxt).count("1")
        return sorted(seen, key=lambda k: -seen[k]) if self.prune else list(seen)

    def value(self, mask: int, dom_turn: bool) -> int:
        if mask == self.full:
            return 0
        key = (mask, dom_turn)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        # Remaining moves lie in [1, undominated]; reaching a bound ends the scan early
        # without affecting the exact value.
        lo, hi = 1, bin(self.full & ~mask).count("1")
        best = None
        for nxt in self.children(mask):
            val = 1 + self.value(nxt, not dom_turn)
            if best is None or (val < best if dom_turn else val > best):
                best = val
            if self.prune and best == (lo if dom_turn else hi):
                break
        self.memo[key] = best
        return best


def _check(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise OracleCapExceeded(f"n={g.n} exceeds oracle cap {cap}")
    if g.n and not g.isolate_free():
        raise ValueError("graph has an isolated vertex")


def gamma_g(g: Graph, variant: str = "d", prune: bool = True, cap: int = DEFAULT_CAP) -> OracleResult:
    """Exact game domination number; variant 'd' for Dominator-start, 's' for Staller-start."""
    _check(g, cap)
    if variant not in ("d", "s"):
        raise ValueError("variant must be 'd' or 's'")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * g.n + 100))
    srch = _Search(g, prune)
    dom_first = variant == "d"
    if g.n == 0:
        return OracleResult(0, variant, 0, [])
    val = srch.value(0, dom_first)
    firsts = []
    for v in range(g.n):
        if 1 + srch.value(srch.closed[v], not dom_first) == val:
            firsts.append(v)
    return OracleResult(val, variant, len(srch.memo), firsts)


def gamma_g_reference(g: Graph, variant: str = "d") -> int:
    """Plain minimax without memoization or pruning; exponential, for cross-checks only."""
    _check(g, 9)
    closed = _closed_masks(g)
    full = (1 << g.n) - 1

    def rec(mask: int, dom_turn: bool) -> int:
        if mask == full:
            return 0
        vals = [1 + rec(mask | c, not dom_turn) for c in closed if mask | c != mask]
        return min(vals) if dom_turn else max(vals)

    return rec(0, variant == "d")


def gamma_g_memo_stats(g: Graph, variant: str = "d", prune: bool = True) -> dict:
    res = gamma_g(g, variant, prune)
    return {"n": g.n, "variant": variant, "value": res.value, "states": res.explored_states}


def bound_d(n: int) -> int:
    return (3 * n) // 5


def bound_s(n: int) -> int:
    return (3 * n + 2) // 5


def verify_bound(g: Graph, cap: int = DEFAULT_CAP) -> dict:
    d = gamma_g(g, "d", cap=cap).value
    s = gamma_g(g, "s", cap=cap).value
    rep = {
        "n": g.n,
        "gamma_g": d,
        "gamma_g_staller": s,
        "bound": bound_d(g.n),
        "bound_staller": bound_s(g.n),
        "extremal": d == bound_d(g.n),
        "extremal_staller": s == bound_s(g.n),
        "ok": d <= bound_d(g.n) and s <= bound_s(g.n),
    }
    if not rep["ok"]:
        raise AssertionError(f"game domination bound violated: {rep}")
    return rep
