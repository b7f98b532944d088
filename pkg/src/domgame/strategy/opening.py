"""Opening phases 1-6: anchors, bridgeheads, tridents, quasi-anchors, core parents, uncles.

Every Staller move gets a plan computed on the position before the move is
applied: either a recoloring committed right after it ("now", worth at least 6)
or a Dominator reaction committed jointly with it ("react", worth at least 20).
Active Dominator moves earn at least 14.
"""
from __future__ import annotations

from typing import Optional

from ..ledger import G, R, W, Y
from .core import Directive, Plan, now, react


# ---------------------------------------------------------------- Staller plans

def staller_plan(c, x: int) -> Plan:
    p = c.phase
    if p >= 6:
        r = _p6_rules(c, x)
        if r is not None:
            return r
    if p >= 5:
        r = _p5_rules(c, x)
        if r is not None:
            return r
    if p >= 3:
        r = _p3_rules(c, x)
        if r is not None:
            return r
    if p >= 2:
        r = _p2_rules(c, x)
        if r is not None:
            return r
    return _p1_rules(c, x)


def _red_leafed(st, *vs) -> dict:
    """Red for each vertex and for its leaf, if it has one."""
    ch = {}
    for v in vs:
        ch[v] = R
        lf = st.leaf_of[v]
        if lf >= 0:
            ch[lf] = R
    return ch


def _p1_rules(c, x: int) -> Plan:
    v, st, col, dom = c.view, c.st, c.col, c.dom
    cx = col[x]
    if cx == G:
        lf = st.leaf_of[x]
        if lf >= 0 and col[lf] == W:
            return now({x: R, lf: R}, "green-parent")
        if st.is_anchor[x]:
            ch = {x: R}
            ch.update({p: G for p in v.white_deps(x)})
            return now(ch, "green-anchor")
        return now({x: R}, "plain-green")
    if cx == W:
        if st.is_leaf[x]:
            y = st.parent_of[x]
            if col[y] == G:
                if v.safe(y):
                    return now({x: R, y: R}, "leaf-of-safe")
                if v.pseudo_safe(y):
                    return _pseudo_safe_defense(c, x, y)
            if st.is_dep[y] and not dom[y] and st.anchor_of[y] >= 0:
                return _dependent_defense(c, y, x, leaf_mode=True)
        elif st.is_dep[x] and st.anchor_of[x] >= 0 and v.fw(x):
            return _dependent_defense(c, x, st.leaf_of[x], leaf_mode=False)
        fab = [] if st.is_anchor[x] else v.fw_abs(x)
        if fab:
            # its anchor-bridges are now safe or pseudo-safe; left white, x would stay a bridgehead
            ch = {x: R}
            ch.update({z: G for z in fab})
            return now(ch, "white-bridgehead")
        return now({x: R}, "plain-white")
    return now({x: R}, "plain")


def _pseudo_safe_defense(c, x: int, y: int) -> Plan:
    v, st, dom = c.view, c.st, c.dom
    u = next(w for w in st.ab_ends[y] if not dom[w])
    if v.leaf_white(u):
        return react(u, {x: R, y: R, u: R, st.leaf_of[u]: R}, "pseudo-safe-anchor-leaf")
    deps = st.deps[u]
    fwd = [d for d in deps if v.fw(d)]
    z = fwd[0] if fwd else (deps[0] if deps else -1)
    ws = [w for w in v.nbrs(u) if st.is_parent[w] and w not in (y, z) and v.leaf_white(w)]
    if ws:
        w = ws[0]
        return react(w, {w: R, st.leaf_of[w]: R, y: R, x: R}, "pseudo-safe-parent")
    if z >= 0 and v.fw(z):
        return react(z, {y: R, x: R, z: R, st.leaf_of[z]: R}, "pseudo-safe-dependent")
    ch = {x: R, y: R, u: R}
    if z >= 0:
        ch[z] = R
    return react(u, ch, "pseudo-safe-anchor")


def _dependent_defense(c, p: int, lf: int, leaf_mode: bool) -> Plan:
    v, st, col, dom = c.view, c.st, c.col, c.dom
    u = st.anchor_of[p]
    if col[u] == R:
        return now({p: R, lf: R}, "dependent-red-anchor")
    fab = v.fw_abs(u)
    if v.leaf_white(u) or len(fab) > 1:
        ch = _red_leafed(st, u)
        ch.update({p: R, lf: R})
        ch.update({z: G for z in fab})
        return react(u, ch, "dependent-anchor")
    rewhite = {u: W} if col[u] == G else {}
    ys = [y for y in v.nbrs(u) if y != p and st.is_parent[y] and v.leaf_white(y)]
    if ys:
        y = ys[0]
        ch = {p: R, lf: R, y: R, st.leaf_of[y]: R}
        ch.update(rewhite)
        # y may be the anchor-bridge that licensed a green bridgehead
        ch.update({b: W for b in v.nbrs(y) if b != u and col[b] == G and y in st.ab_of[b]})
        return react(y, ch, "dependent-parent")
    if leaf_mode and not dom[u]:
        return now({lf: R}, "dependent-leaf")
    ch = {p: R, lf: R}
    ch.update(rewhite)
    return now(ch, "dependent-fallback")


def _p2_rules(c, x: int) -> Optional[Plan]:
    v, st, col = c.view, c.st, c.col
    if col[x] == G and v.bridgehead(x):
        ch = {x: R}
        ch.update({z: G for z in v.fw_abs(x)})
        return now(ch, "green-bridgehead")
    z = _played_fw_ab(c, x)
    if z >= 0:
        for u in st.ab_owners[z]:
            if col[u] == G and v.bridgehead(u):
                return now({z: R, st.leaf_of[z]: R, u: W}, "bridgehead-ab")
    return None


def _played_fw_ab(c, x: int) -> int:
    """The fully white anchor-bridge that x is or is the leaf of, else -1."""
    st, v = c.st, c.view
    if st.is_ab[x] and v.fw(x):
        return x
    if st.is_leaf[x]:
        p = st.parent_of[x]
        if st.is_ab[p] and v.fw(p):
            return p
    return -1


def _p3_rules(c, x: int) -> Optional[Plan]:
    v, st, col = c.view, c.st, c.col
    if v.trident(x):
        ch = {x: R}
        ch.update({z: G for z in v.fw_abs(x)})
        return now(ch, "trident")
    z = _played_fw_ab(c, x)
    if z >= 0:
        for u in st.ab_owners[z]:
            if v.trident(u):
                ch = _red_leafed(st, u, z)
                ch.update({w: G for w in v.fw_abs(u) if w != z})
                return react(u, ch, "trident-ab")
    lf = st.leaf_of[x]
    if col[x] == G and lf >= 0 and col[lf] == W and v.quasi_dependent(x):
        return now({x: R, lf: R}, "green-qd")
    if st.is_leaf[x] and col[x] == W:
        p = st.parent_of[x]
        if col[p] == G and v.quasi_dependent(p) and not v.safe(p):
            qa = v.quasi_anchor(p)
            ys = [y for y in v.qd_parents(qa) if y != p and v.fw(y) and v.f(y) == 0]
            if ys:
                y = ys[0]
                return react(y, {p: R, x: R, y: R, st.leaf_of[y]: R}, "qd-leaf")
    if col[x] == W and v.fw(x) and v.quasi_dependent(x) and v.f(x) == 0:
        return now({x: R, lf: R}, "qd-white")
    return None


def _p5_rules(c, x: int) -> Optional[Plan]:
    if c.col[x] == Y:
        col = c.col
        ch = {x: R}
        ch.update({w: Y for w in c.view.nbrs(x) if col[w] == W})
        return now(ch, "yellow")
    return None


def _p6_rules(c, x: int) -> Optional[Plan]:
    v, st, col, dom = c.view, c.st, c.col, c.dom
    if col[x] == Y:
        und = [w for w in v.nbrs(x) if not dom[w]]
        if not und:
            return now({x: R}, "plain-yellow")
        w = und[0]

        def after(core, x=x, w=w):
            vw = core.view
            if vw.safe(w):
                for g in vw.nbrs(w):
                    if g != x and core.col[g] == G and vw.in_B(g):
                        return {x: R, g: Y, w: G}
            return {x: R, w: Y}
        return now(after, "yellow-uncle")
    p = st.parent_of[x] if st.is_leaf[x] else x
    if st.is_parent[p] and col[p] == W and v.in_B(p) and v.safe(p) and v.leaf_white(p):
        ch = {p: R, st.leaf_of[p]: R}
        greens = [g for g in v.nbrs(p) if v.in_B(g) and col[g] == G]
        if greens:
            ch[greens[0]] = Y
        return now(ch, "safe-parent-B")
    return None


# ---------------------------------------------------------------- active moves

def directive(c) -> Optional[Directive]:
    return _ACTIVE[c.phase](c)


def _p1_done(c, u: int) -> bool:
    v, col = c.view, c.col
    if col[u] in (G, R):
        return True
    wd = v.white_deps(u)
    if not wd:
        return True
    if len(wd) == 1 and not v.leaf_white(u):
        return not any(y != wd[0] for y in v.fw_parent_neighbors(u))
    return False


def _p1_active(c) -> Optional[Directive]:
    v, st, dom = c.view, c.st, c.dom
    u = next((a for a in c.view.scan(c.anchors) if not _p1_done(c, a)), -1)
    if u < 0:
        return None
    wd = v.white_deps(u)
    nonfw = [p for p in wd if not v.fw(p)]
    x = nonfw[0] if nonfw else wd[0]
    if v.leaf_white(u):
        ch = _red_leafed(st, u)
        ch.update({p: G for p in wd})
        return Directive(u, ch, "p1-anchor-leaf", 14)
    fab = v.fw_abs(u)
    if len(fab) >= 3 or (len(fab) == 2 and len(wd) >= 2):
        ch = _red_leafed(st, u)
        ch.update({z: G for z in fab})
        ch.update({p: G for p in wd})
        return Directive(u, ch, "p1-anchor-bridges", 14)
    cands = [y for y in v.nbrs(u) if y != x and v.fw(y)]
    if cands:
        y = min(cands, key=lambda w: (0 if st.is_dep[w] else 1 if st.is_ab[w] else 2, w))
        ch = _red_leafed(st, y)
        if dom[st.leaf_of[x]]:
            ch[x] = R
        else:
            ch[u] = G
        return Directive(y, ch, "p1-parent", 14)
    ch = _red_leafed(st, u)
    ch.update({p: R for p in wd})
    return Directive(u, ch, "p1-anchor-fallback", 14)


def _p2_done(c, u: int) -> bool:
    v, st, dom = c.view, c.st, c.dom
    if st.is_anchor[u]:
        return True
    fab = v.fw_abs(u)
    if not fab:
        return True
    if not v.bridgehead(u):
        return False  # a white leaf next to a fully white anchor-bridge
    k = len(v.fw_parent_neighbors(u))
    if dom[u] and len(fab) <= 1:
        return True
    if k <= 1 or (dom[u] and k == 2):
        return True
    return len(fab) == 3 and not v.leaf_white(u)


def _p2_active(c) -> Optional[Directive]:
    v, st = c.view, c.st
    u = next((w for w in c.view.scan(range(st.n)) if st.ab_of[w] and not _p2_done(c, w)), -1)
    if u < 0:
        return None
    fab = v.fw_abs(u)
    if len(fab) >= 4:
        ch = _red_leafed(st, u)
        ch.update({z: G for z in fab})
        return Directive(u, ch, "p2-many-bridges", 14)
    if v.leaf_white(u):
        ch = _red_leafed(st, u)
        ch.update({z: G for z in fab})
        return Directive(u, ch, "p2-leafed-bridgehead", 14)
    if len(fab) == 2:
        z = fab[0]
        ch = _red_leafed(st, z)
        ch[u] = G
        return Directive(z, ch, "p2-two-bridges", 14)
    ys = [y for y in v.fw_parent_neighbors(u) if y not in fab]
    y = ys[0] if ys else fab[0]
    ch = _red_leafed(st, y)
    ch[u] = G
    return Directive(y, ch, "p2-parent", 14)


def _p3_active(c) -> Optional[Directive]:
    v, st = c.view, c.st
    u = next((w for w in c.view.scan(range(st.n)) if st.ab_of[w] and v.trident(w)), -1)
    if u < 0:
        return None
    fab = v.fw_abs(u)
    z = fab[0]
    ch = _red_leafed(st, z)
    ch[u] = G
    d = Directive(z, ch, "p3-trident-bridge", 14)
    if c.try_directive(d) is None:
        return d
    return Directive(u, _trident_takeover, "p3-trident", 14)


def _trident_takeover(c) -> dict:
    """Colors after Dominator plays a trident u itself (already applied)."""
    v, st, col = c.view, c.st, c.col
    u = c.state.move_log[-1][2].vertex
    fab = [z for z in st.ab_of[u] if col[z] == W and v.leaf_white(z)]
    ch = _red_leafed(st, u)
    ch.update({z: G for z in fab})
    taken = set()
    for x in sorted(v.nbrs(u)):
        if x in ch or not st.is_parent[x] or not v.leaf_white(x) or col[x] != W:
            continue
        if v.residual(x):
            ch[x] = G
            continue
        qa = v.quasi_anchor(x)
        if qa < 0:
            continue
        ys = [y for y in v.qd_parents(qa)
              if y != x and y not in taken and col[y] == W and v.leaf_white(y) and v.f(y) == 0]
        if ys:
            taken.add(ys[0])
            ch[x] = G
    return ch


def _p4_active(c) -> Optional[Directive]:
    v, st, col = c.view, c.st, c.col
    for u in c.view.scan(range(st.n)):
        if col[u] == W and v.leaf_white(u) and v.in_B(u):
            qd = [x for x in v.qd_parents(u) if col[x] == W and v.leaf_white(x)]
            if qd:
                ch = _red_leafed(st, u)
                ch.update({x: G for x in qd})
                return Directive(u, ch, "p4-quasi-anchor", 14)
    return None


def _p5_active(c) -> Optional[Directive]:
    v, st, col = c.view, c.st, c.col
    for p in c.view.scan(c.parents):
        if not v.fw(p):
            continue
        others = [w for w in v.nbrs(p) if not st.is_leaf[w] and col[w] == W]
        if len(others) >= 2:
            ch = _red_leafed(st, p)
            ch.update({w: Y for w in others})
            return Directive(p, ch, "p5-core-parent", 14)
    return None


def p6_prelude(c) -> None:
    """Dominated white vertices turn yellow.

    A green vertex whose license rested on one of them (a bridgehead's last fully
    white anchor-bridge, a B vertex's white safe parent) turns yellow too.
    """
    col, dom = c.col, c.dom
    ch = {v: Y for v in c.view.scan(range(c.graph.n)) if col[v] == W and dom[v]}
    if not ch:
        return
    for _ in range(c.graph.n):
        led = c.ledger.copy()
        for v, k in ch.items():
            led.colors[v] = k
        view = c.view.rebind(c.state, led)
        lost = [v for v in sorted(view.ball(list(ch), 3))
                if led.colors[v] == G and not view.green_allowed("T4u", v)]
        if not lost:
            break
        ch.update({v: Y for v in lost})
    c.commit(ch, "p6-yellow")


def _p6_done(c) -> bool:
    v, col = c.view, c.col
    for w in c.view.scan(range(c.graph.n)):
        if col[w] != W:
            continue
        k = len(v.fw_parent_neighbors(w))
        if k >= 2 or (k == 1 and v.leaf_white(w)):
            return False
    return True


def _p6_active(c) -> Optional[Directive]:
    v, st, col = c.view, c.st, c.col
    if _p6_done(c):
        return None
    for x in c.view.scan(c.parents):
        if col[x] != W:
            continue
        ys = [y for y in v.nbrs(x) if st.is_parent[y] and col[y] == W]
        if ys:
            ch = _red_leafed(st, x)
            ch.update({y: G for y in ys})
            return Directive(x, ch, "p6-cousins", 14)
    for u in c.view.scan(range(st.n)):
        if col[u] != W:
            continue
        wp = [p for p in v.nbrs(u) if st.is_parent[p] and col[p] == W]
        if len(wp) >= 4:
            ch = _red_leafed(st, u)
            ch.update({p: G for p in wp})
            return Directive(u, ch, "p6-many-parents", 14)
    for u in c.view.scan(range(st.n)):
        if col[u] != W or v.leaf_white(u):
            continue
        fp = v.fw_parent_neighbors(u)
        if 2 <= len(fp) <= 3:
            if v.mixed_qa(u):
                qd = [p for p in fp if v.quasi_anchor(p) == u]
                rest = [p for p in fp if p not in qd]
                fp = min((qd, rest), key=len) or fp
            p = fp[0]
            ch = _red_leafed(st, p)
            ch[u] = G
            return Directive(p, ch, "p6-uncle", 14)
    raise c.fail("phase 6 has no applicable move")


_ACTIVE = {1: _p1_active, 2: _p2_active, 3: _p3_active, 4: _p4_active, 5: _p5_active,
           6: _p6_active}
