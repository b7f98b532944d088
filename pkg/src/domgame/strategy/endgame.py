"""Phases 7-11: leftover parents, white components, white interior, parents, isolates.

From phase 9 on every vertex is kept at its cheapest legal color, so the
Dominator moves below only name the vertex; the recoloring follows.
"""
from __future__ import annotations

from typing import Optional

from ..ledger import B, CITRUS, G, O, R, W
from .core import Directive, Plan, now
from .pq import final_counting, find_pq


class Script:
    """A short fixed sequence of Dominator moves that depends on Staller's replies."""

    name = "script"

    def __init__(self):
        self.stage = 1

    def key(self) -> tuple:
        return (self.name, self.stage) + self._key()

    def _key(self) -> tuple:
        return ()

    def staller_plan(self, c, x: int) -> Optional[Plan]:
        return None

    def next(self, c) -> Optional[Directive]:
        raise NotImplementedError


# ---------------------------------------------------------------- phases 7, 8

def staller_plan(c, x: int) -> Plan:
    col, dom = c.col, c.dom
    old = col[x]
    ch = {x: R}
    if c.phase == 7:
        if old != W:
            ch.update({w: old for w in c.view.nbrs(x) if col[w] == W})
        return now(ch, "plain" if old == W else "spread")
    targets = [w for w in c.view.nbrs(x) if not dom[w]]

    def changes(c):
        ch = {x: R}
        for w in targets:
            ch[w] = _blue(c, w) if old == W else old
        return ch
    return now(changes, "plain" if old == W else "spread")


def _blue(c, w: int):
    """Blue, or green while w still guards an undominated leaf or parent."""
    return G if c.view.adjacent_undominated_leaf_or_parent(w) else B


def _blue_around(t: int):
    """Changes for a play of t: t red, white neighbors blue (auto-red fixes the unplayable ones)."""
    def changes(c):
        ch = {t: R}
        for w in c.view.nbrs(t):
            if c.col[w] == W:
                ch[w] = _blue(c, w)
        return ch
    return changes


def _p7(c) -> Optional[Directive]:
    st, dom, col = c.st, c.dom, c.col
    for p in c.view.scan(c.parents):
        if dom[p]:
            continue
        rest = [w for w in c.view.nbrs(p) if not st.is_leaf[w]]
        if any(not dom[w] for w in rest):
            ch = {p: R, st.leaf_of[p]: R}
            ch.update({w: G for w in rest if col[w] == W})
            return Directive(p, ch, "p7-parent", 14)
    return None


def _undominated_components(c) -> list[list[int]]:
    dom = c.dom
    seen = [False] * c.graph.n
    comps = []
    for s in c.view.scan(range(c.graph.n)):
        if dom[s] or seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in c.view.nbrs(v):
                if not dom[w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    return comps


def _cycle_order(c, comp: list[int]) -> list[int]:
    dom = c.dom
    start = min(comp)
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in c.view.nbrs(cur) if not dom[w] and w != prev]
        nxt = min(nxt) if prev < 0 else nxt[0]
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


class CycleScript(Script):
    name = "cycle"

    def __init__(self, xs: list[int]):
        super().__init__()
        self.xs = list(xs)

    def _key(self) -> tuple:
        return tuple(self.xs)

    def staller_plan(self, c, x: int) -> Optional[Plan]:
        xs = self.xs
        if len(xs) == 5 and self.stage == 1:
            if x == xs[1]:
                return now({xs[1]: R, xs[2]: O, xs[4]: O}, "cycle5-neighbor")
            if x == xs[4]:
                return now({xs[4]: R, xs[3]: O, xs[1]: O}, "cycle5-neighbor")
        return None

    def next(self, c) -> Optional[Directive]:
        if self.stage != 1:
            return None
        self.stage = 2
        xs, k, last = self.xs, len(self.xs), c.last_s
        if k == 5:
            if last in xs:
                return None
            t = xs[2]
        elif k == 6:
            t = xs[3]
        elif last is None or last == xs[-1] or last not in xs:
            t = xs[3]
        elif last == xs[1]:
            t = xs[k - 3]
        else:
            return None
        if c.dom[t]:
            # Staller dominated the target from outside: take the best remaining cycle vertex
            live = [w for w in xs if c.view.playable(w)]
            if not live:
                return None
            t = max(live, key=lambda w: (c.view.undominated_neighbor_count(w) + (not c.dom[w]), -w))
        return Directive(t, _blue_around(t), f"cycle{min(k, 7)}-follow")


def _p8(c) -> Optional[Directive]:
    v, dom = c.view, c.dom
    for x in c.view.scan(range(c.graph.n)):
        if not dom[x] and v.undominated_neighbor_count(x) >= 3:
            return Directive(x, _blue_around(x), "p8-star", 15)
    comps = [cp for cp in _undominated_components(c) if len(cp) >= 3]
    for comp in comps:
        for x in sorted(comp):
            und = v.undominated_neighbors(x)
            if len(und) == 1:
                y = und[0]
                return Directive(y, _blue_around(y), "p8-path", 15)
    for comp in comps:
        xs = _cycle_order(c, comp)
        k = len(xs)
        if k == 3:
            return Directive(xs[0], _blue_around(xs[0]), "p8-cycle3", 14)
        if k == 4:
            return Directive(xs[0], {xs[0]: R, xs[1]: O, xs[3]: O}, "p8-cycle4", 14)
        if k == 5:
            return Directive(xs[0], {xs[0]: R}, "p8-cycle5", script=CycleScript(xs))
        return Directive(xs[0], _blue_around(xs[0]), f"p8-cycle{min(k, 7)}", script=CycleScript(xs))
    return None


# ---------------------------------------------------------------- phases 9, 10

def _white_nbrs(c, v: int) -> list[int]:
    col = c.col
    return [w for w in c.view.nbrs(v) if col[w] == W]


def _single(v: int, case: int) -> Directive:
    return Directive(v, None, f"case{case}", 14)


def _case1(c) -> Optional[Directive]:
    for u in c.view.scan(range(c.graph.n)):
        wn = _white_nbrs(c, u)
        if len(wn) == 2 and c.graph.has_edge(wn[0], wn[1]):
            return _single(wn[0], 1)
        if len(wn) == 1 and any(y != u for y in _white_nbrs(c, wn[0])):
            return _single(wn[0], 1)
    return None


def _case2(c) -> Optional[Directive]:
    col = c.col
    for u in c.view.scan(range(c.graph.n)):
        if col[u] == B and len(_white_nbrs(c, u)) >= 3:
            return _single(u, 2)
    return None


def _case3(c) -> Optional[Directive]:
    col, g = c.col, c.graph
    for x, y in g.edges:
        if col[x] != W or col[y] != W:
            continue
        for a, b in ((x, y), (y, x)):
            us = [u for u in c.view.nbrs(a) if col[u] == B and not g.has_edge(u, b)]
            vs = [w for w in c.view.nbrs(b) if col[w] == B and not g.has_edge(w, a)]
            for u in us:
                for w in vs:
                    if u != w:  # an edge u-w does not change the count
                        return _single(a, 3)
    return None


def _case4(c) -> Optional[Directive]:
    col = c.col
    for x in c.view.scan(range(c.graph.n)):
        if col[x] != W:
            continue
        nb = c.view.nbrs(x)
        blues = [u for u in nb if col[u] == B]
        if blues and sum(1 for w in nb if col[w] in (B, O)) >= 2:
            return _single(x if _white_nbrs(c, x) else blues[0], 4)
    return None


def _citrus(c):
    col = c.col
    return [v for v in c.view.scan(range(c.graph.n)) if col[v] in CITRUS]


def _split_white(c, v: int):
    st = c.st
    wn = _white_nbrs(c, v)
    return wn, [w for w in wn if st.is_parent[w]], [w for w in wn if not st.is_parent[w]]


def _case5(c) -> Optional[Directive]:
    st = c.st
    for x in _citrus(c):
        if st.is_parent[x] and c.view.leaf_white(x):
            _, _, np_ = _split_white(c, x)
            if any(not st.is_leaf[w] or st.parent_of[w] != x for w in np_):
                return _single(x, 5)
    return None


def _case6(c) -> Optional[Directive]:
    for x in _citrus(c):
        if c.view.leaf_white(x):
            continue
        wn, wp, _ = _split_white(c, x)
        if len(wp) == 1 and len(wn) <= 2:
            return _single(wp[0], 6)
    return None


def _case7(c) -> Optional[Directive]:
    for x in _citrus(c):
        if len(_split_white(c, x)[2]) >= 2:
            return _single(x, 7)
    return None


def _case8(c) -> Optional[Directive]:
    for x in _citrus(c):
        _, wp, np_ = _split_white(c, x)
        if len(wp) >= 3 and np_:
            return _single(x, 8)
    return None


def _case9(c) -> Optional[Directive]:
    for x in _citrus(c):
        wn = _white_nbrs(c, x)
        if len(wn) >= 3 and any(not _white_nbrs(c, w) for w in wn):
            return _single(x, 9)
    return None


class ZugzwangScript(Script):
    name = "zugzwang"

    def next(self, c) -> Optional[Directive]:
        if self.stage != 1:
            return None
        self.stage = 2
        z, st = c.last_s, c.st
        if z is None or not st.is_leaf[z]:
            return None
        u = st.parent_of[z]
        if c.col[u] not in CITRUS:
            return None
        vs = [v for v in c.view.nbrs(u) if st.is_parent[v] and c.col[v] == W]
        if not vs:
            return None
        return Directive(vs[0], None, "case10-follow")


def _case10(c) -> Optional[Directive]:
    """A white edge xy such that every non-red non-white vertex without a white leaf
    keeps two white neighbors outside {x, y}."""
    col, v = c.col, c.view
    blocked_v, blocked_e = set(), set()
    for z in c.view.scan(range(c.graph.n)):
        if col[z] in (R, W) or v.leaf_white(z):
            continue
        wn = _white_nbrs(c, z)
        if len(wn) <= 1:
            return None
        if len(wn) == 2:
            blocked_v.update(wn)
        elif len(wn) == 3:
            a, b, d = wn
            blocked_e.update({(a, b), (a, d), (b, d)})
    for x, y in c.graph.edges:
        if col[x] == W and col[y] == W and x not in blocked_v and y not in blocked_v \
                and (x, y) not in blocked_e:
            return Directive(x, None, "case10", script=ZugzwangScript())
    return None


class FollowScript(Script):
    """Play `target` unless Staller's reply is in `stop`; `alt` replaces target when dominated."""

    name = "follow"

    def __init__(self, rule: str, targets: list[int], stop_if_adjacent_all: tuple = (),
                 stop: tuple = ()):
        super().__init__()
        self.rule, self.targets = rule, list(targets)
        self.adj_all, self.stop = tuple(stop_if_adjacent_all), tuple(stop)

    def _key(self) -> tuple:
        return (self.rule, tuple(self.targets), self.adj_all, self.stop)

    def next(self, c) -> Optional[Directive]:
        if self.stage != 1:
            return None
        self.stage = 2
        z = c.last_s
        if z is not None:
            if z in self.stop:
                return None
            if self.adj_all and all(z == y or c.graph.has_edge(z, y) for y in self.adj_all):
                return None
        for t in self.targets:
            if not c.dom[t]:
                return Directive(t, None, self.rule + "-follow")
        return None


def _last_interior(c, x: int) -> Directive:
    st, col = c.st, c.col
    wn = _white_nbrs(c, x)
    if not wn:
        raise c.fail(f"interior vertex {x} has no white neighbor")
    y = wn[0]
    us = [u for u in c.view.nbrs(y) if col[u] in CITRUS] or \
         [u for u in c.view.nbrs(x) if col[u] in CITRUS]
    if not us:
        raise c.fail(f"interior edge {x}-{y} has no citrus neighbor")
    u = us[0]
    zs = [w for w in c.view.nbrs(u) if st.is_parent[w] and col[w] == W]
    if len(zs) != 2:
        raise c.fail(f"citrus vertex {u} has {len(zs)} white parents, expected 2")
    second = []
    for z in zs:
        found = None
        for v in c.view.nbrs(z):
            if v == u or col[v] not in CITRUS:
                continue
            rest = [w for w in _white_nbrs(c, v) if w != z]
            if len(rest) == 1 and not st.is_leaf[rest[0]]:
                found = (v, rest[0])
                break
        if found is None:
            raise c.fail(f"no second citrus vertex for parent {z}")
        second.append(found)
    (v1, z12), (v2, z22) = second
    z11, z21 = zs
    if z11 == z22 or z21 == z12:
        return Directive(u, None, "interior-short", 14)
    if z12 == z22:
        return Directive(u, None, "interior-shared",
                         script=FollowScript("interior-shared", [z12],
                                             stop=(v1, v2, z12, st.leaf_of[z12])))
    return Directive(u, None, "interior",
                     script=_TwoTargets("interior", z12, z22))


class _TwoTargets(Script):
    """After Dominator's move, play whichever of a, b Staller's reply did not dominate (b first)."""

    name = "two-targets"

    def __init__(self, rule: str, a: int, b: int):
        super().__init__()
        self.rule, self.a, self.b = rule, a, b

    def _key(self) -> tuple:
        return (self.rule, self.a, self.b)

    def next(self, c) -> Optional[Directive]:
        if self.stage != 1:
            return None
        self.stage = 2
        for t in (self.b, self.a):
            if not c.dom[t]:
                return Directive(t, None, self.rule + "-follow")
        return None


class PQScript(Script):
    name = "pq"

    def __init__(self, P):
        super().__init__()
        self.P = tuple(P)

    def _key(self) -> tuple:
        return self.P

    def next(self, c) -> Optional[Directive]:
        for p in self.P:
            if not c.dom[p]:
                return Directive(p, None, "case11-parent")
        return None


def _case11(c) -> Optional[Directive]:
    inst = find_pq(c.view)
    if inst is None:
        return None
    c._emit("pq", None, rule="case11", instance=inst.as_dict())
    return Directive(inst.P[0], None, "case11", script=PQScript(inst.P))


def _case12(c) -> Optional[Directive]:
    st, col = c.st, c.col
    for u in _citrus(c):
        wp = [w for w in c.view.nbrs(u) if st.is_parent[w] and col[w] == W]
        if len(wp) < 4:
            continue
        ys = []
        for xi in wp:
            for v in c.view.nbrs(xi):
                if v == u or col[v] not in CITRUS:
                    continue
                rest = [w for w in _white_nbrs(c, v) if w != xi]
                if len(rest) == 1 and not st.is_leaf[rest[0]] and rest[0] not in ys:
                    ys.append(rest[0])
                    break
            if len(ys) == 2:
                break
        if len(ys) < 2:
            raise c.fail(f"four-parent vertex {u} lacks the expected second parents")
        return Directive(u, None, "case12",
                         script=FollowScript("case12", [ys[1], ys[0]], stop_if_adjacent_all=tuple(ys)))
    return None


def _p9_pending(c) -> int:
    """A white vertex that is neither leaf nor parent and has a non-orange neighbor, else -1."""
    st, col = c.st, c.col
    for x in c.view.scan(range(c.graph.n)):
        if col[x] == W and not st.is_leaf[x] and not st.is_parent[x]:
            if any(col[w] != O for w in c.view.nbrs(x)):
                return x
    return -1


_P9_CASES = (_case1, _case2, _case3, _case4, _case5, _case6, _case7, _case8, _case9, _case10)
_P10_CASES = (_case1, _case9, _case10, _case11, _case12)


def _p9(c) -> Optional[Directive]:
    x = _p9_pending(c)
    if x < 0:
        return None
    for case in _P9_CASES:
        d = case(c)
        if d is not None:
            return d
    return _last_interior(c, x)


def _p10(c) -> Optional[Directive]:
    for case in _P10_CASES:
        d = case(c)
        if d is not None:
            return d
    st, col = c.st, c.col
    if any(st.is_parent[x] and col[x] == W for x in c.view.scan(range(c.graph.n))):
        raise c.fail(f"white parents remain: {final_counting(c.view)}", "final-count")
    return None


def _p11(c) -> Optional[Directive]:
    dom = c.dom
    for v in c.view.scan(range(c.graph.n)):
        if not dom[v]:
            return Directive(v, None, "isolate", 10)
    return None


_ACTIVE = {7: _p7, 8: _p8, 9: _p9, 10: _p10, 11: _p11}


def directive(c) -> Optional[Directive]:
    return _ACTIVE[c.phase](c)
