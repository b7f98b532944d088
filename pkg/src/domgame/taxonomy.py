"""Structural and state-dependent vertex classification.

`Structure` holds the roles that never change during a game (leaves, parents,
dependent parents, anchors, anchor-bridges). `View` answers the color- and
domination-dependent questions on a live game and counts adjacency touches.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Graph
from .ledger import CITRUS, Color, G, R, W, Y


class Structure:
    __slots__ = ("graph", "n", "adj", "deg", "is_leaf", "parent_of", "leaf_of", "is_parent",
                 "is_dep", "anchor_of", "is_anchor", "deps", "ab_of", "ab_owners", "is_ab",
                 "ab_ends")

    def __init__(self, g: Graph):
        n = g.n
        self.graph = g
        self.n = n
        self.adj = g.adj
        self.deg = g.deg
        adj, deg = g.adj, g.deg
        self.is_leaf = [deg[v] == 1 for v in range(n)]
        self.parent_of = [adj[v][0] if deg[v] == 1 else -1 for v in range(n)]
        self.leaf_of = [-1] * n
        for v in range(n):
            for w in adj[v]:
                if deg[w] == 1:
                    self.leaf_of[v] = w
                    break
        self.is_parent = [lf >= 0 for lf in self.leaf_of]
        self.is_dep = [self.is_parent[v] and deg[v] == 2 for v in range(n)]
        self.anchor_of = [-1] * n
        self.is_anchor = [False] * n
        self.deps: list[list[int]] = [[] for _ in range(n)]
        for p in range(n):
            if self.is_dep[p]:
                u = adj[p][0] if adj[p][1] == self.leaf_of[p] else adj[p][1]
                if deg[u] == 1:
                    continue  # an isolated edge plus nothing: no anchor
                self.anchor_of[p] = u
                self.is_anchor[u] = True
                self.deps[u].append(p)
        # ab_of[u]: anchor-bridges z in AB(u); ab_ends[z]: the two non-leaf neighbors.
        self.ab_of: list[list[int]] = [[] for _ in range(n)]
        self.ab_owners: list[tuple[int, ...]] = [()] * n
        self.ab_ends: list[tuple[int, ...]] = [()] * n
        self.is_ab = [False] * n
        for z in range(n):
            if not self.is_parent[z] or deg[z] != 3:
                continue
            a, b = (w for w in adj[z] if w != self.leaf_of[z])
            if self.is_leaf[a] or self.is_leaf[b]:
                continue  # z has two leaves
            owners = []
            for u, w in ((a, b), (b, a)):
                if self.is_anchor[w] and not self.is_leaf[u] and not self.is_dep[u]:
                    owners.append(u)
            if owners:
                self.is_ab[z] = True
                self.ab_owners[z] = tuple(owners)
                self.ab_ends[z] = (a, b)
                for u in owners:
                    self.ab_of[u].append(z)
        for v in range(n):
            if self.is_anchor[v] and self.is_ab[v]:
                raise AssertionError(f"vertex {v} is both an anchor and an anchor-bridge")

    def __deepcopy__(self, memo):
        return self


@dataclass(frozen=True)
class Snapshot:
    """Sets A, B, R fixed at the end of phase 2."""

    A: frozenset
    B: frozenset
    R: frozenset
    frozen_at: int

    def as_dict(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "R": sorted(self.R),
                "frozen_at": self.frozen_at}


class View:
    """Live classification over a structure, a game state and a color ledger."""

    def __init__(self, st: Structure, state, ledger, snapshot: Optional[Snapshot] = None):
        self.st = st
        self.state = state
        self.ledger = ledger
        self.snapshot = snapshot
        self.touches = 0
        n = st.n
        self._A = [False] * n
        self._B = [False] * n
        self._R = [False] * n
        if snapshot is not None:
            self._set_snapshot(snapshot)

    def _set_snapshot(self, snap: Snapshot) -> None:
        self.snapshot = snap
        n = self.st.n
        # fresh arrays: clones taken before freezing share the old ones
        self._A, self._B, self._R = [False] * n, [False] * n, [False] * n
        for v in snap.A:
            self._A[v] = True
        for v in snap.B:
            self._B[v] = True
        for v in snap.R:
            self._R[v] = True

    def rebind(self, state, ledger) -> "View":
        v = View.__new__(View)
        v.st, v.state, v.ledger, v.snapshot = self.st, state, ledger, self.snapshot
        v.touches = self.touches
        v._A, v._B, v._R = self._A, self._B, self._R  # never mutated after freezing
        return v

    # ---- basics
    @property
    def dom(self) -> list:
        return self.state.dominated

    @property
    def col(self) -> list:
        return self.ledger.colors

    @property
    def time(self) -> int:
        return self.state.time

    def scan(self, seq):
        """A vertex sequence charged one touch per element (full length, even if cut short)."""
        self.touches += len(seq)
        return seq

    def nbrs(self, v: int) -> tuple:
        self.touches += self.st.deg[v] + 1
        return self.st.adj[v]

    def white(self, v: int) -> bool:
        return self.ledger.colors[v] == W

    def citrus(self, v: int) -> bool:
        return self.ledger.colors[v] in CITRUS

    def playable(self, v: int) -> bool:
        dom = self.state.dominated
        if not dom[v]:
            return True
        return any(not dom[w] for w in self.nbrs(v))

    def undominated_neighbors(self, v: int) -> list[int]:
        dom = self.state.dominated
        return [w for w in self.nbrs(v) if not dom[w]]

    def undominated_neighbor_count(self, v: int) -> int:
        dom = self.state.dominated
        return sum(1 for w in self.nbrs(v) if not dom[w])

    def white_neighbors(self, v: int) -> list[int]:
        cols = self.ledger.colors
        return [w for w in self.nbrs(v) if cols[w] == W]

    def adjacent_undominated_parent(self, v: int) -> bool:
        dom, isp = self.state.dominated, self.st.is_parent
        return any(isp[w] and not dom[w] for w in self.nbrs(v))

    def adjacent_undominated_leaf_or_parent(self, v: int) -> bool:
        dom, isp, isl = self.state.dominated, self.st.is_parent, self.st.is_leaf
        return any((isp[w] or isl[w]) and not dom[w] for w in self.nbrs(v))

    def ball(self, seeds: Iterable[int], radius: int) -> set[int]:
        seen = set(seeds)
        frontier = list(seen)
        for _ in range(radius):
            nxt = []
            for v in frontier:
                for w in self.nbrs(v):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    # ---- parents
    def leaf_white(self, v: int) -> bool:
        lf = self.st.leaf_of[v]
        return lf >= 0 and self.ledger.colors[lf] == W

    def fw(self, p: int) -> bool:
        """Fully white parent: parent and leaf both white."""
        lf = self.st.leaf_of[p]
        cols = self.ledger.colors
        return lf >= 0 and cols[p] == W and cols[lf] == W

    def safe(self, p: int) -> bool:
        if not self.st.is_parent[p]:
            return False
        lf = self.st.leaf_of[p]
        dom = self.state.dominated
        return all(dom[w] or w == lf for w in self.nbrs(p))

    def pseudo_safe(self, p: int) -> bool:
        st = self.st
        if not st.is_ab[p] or not self.leaf_white(p):
            return False
        dom = self.state.dominated
        und = [w for w in st.ab_ends[p] if not dom[w]]
        self.touches += 3
        return len(und) == 1 and st.is_anchor[und[0]]

    def safe_or_pseudo(self, p: int) -> bool:
        return self.safe(p) or self.pseudo_safe(p)

    def fw_abs(self, u: int) -> list[int]:
        self.touches += len(self.st.ab_of[u]) + 1
        return [z for z in self.st.ab_of[u] if self.fw(z)]

    def undominated_abs(self, u: int) -> list[int]:
        dom = self.state.dominated
        self.touches += len(self.st.ab_of[u]) + 1
        return [z for z in self.st.ab_of[u] if not dom[z]]

    def fw_deps(self, u: int) -> list[int]:
        self.touches += len(self.st.deps[u]) + 1
        return [p for p in self.st.deps[u] if self.fw(p)]

    def white_deps(self, u: int) -> list[int]:
        cols = self.ledger.colors
        self.touches += len(self.st.deps[u]) + 1
        return [p for p in self.st.deps[u] if cols[p] == W]

    def fw_parent_neighbors(self, v: int) -> list[int]:
        return [w for w in self.nbrs(v) if self.fw(w)]

    def parents_with_white_leaf(self, v: int) -> list[int]:
        return [w for w in self.nbrs(v) if self.leaf_white(w)]

    def bridgehead(self, u: int) -> bool:
        st = self.st
        if st.is_anchor[u] or st.is_leaf[u] or self.leaf_white(u):
            return False
        return any(self.fw(z) for z in st.ab_of[u])

    def trident(self, u: int) -> bool:
        return self.bridgehead(u) and len(self.fw_abs(u)) == 3

    def semi_trident(self, u: int) -> bool:
        return self.bridgehead(u) and len(self.fw_abs(u)) == 2

    # ---- snapshot-relative classes
    def in_A(self, v: int) -> bool:
        return self._A[v]

    def in_B(self, v: int) -> bool:
        return self._B[v]

    def in_R(self, v: int) -> bool:
        return self._R[v]

    def b_neighbors(self, v: int) -> list[int]:
        B = self._B
        return [w for w in self.nbrs(v) if B[w]]

    def residual(self, x: int) -> bool:
        return self.snapshot is not None and self.st.is_parent[x] and self._B[x] \
            and not self.b_neighbors(x)

    def quasi_anchor(self, x: int) -> int:
        """The unique B-neighbor of a quasi-dependent parent x, else -1."""
        if self.snapshot is None or not self.st.is_parent[x] or not self._B[x]:
            return -1
        bn = self.b_neighbors(x)
        return bn[0] if len(bn) == 1 else -1

    def quasi_dependent(self, x: int) -> bool:
        return self.quasi_anchor(x) >= 0

    def qd_parents(self, u: int) -> list[int]:
        """Quasi-dependent parents whose quasi-anchor is u."""
        if self.snapshot is None or not self._B[u]:
            return []
        return [x for x in self.nbrs(u) if self.quasi_anchor(x) == u]

    def f(self, x: int) -> int:
        return sum(1 for w in self.nbrs(x) if self.trident(w))

    def mixed_qa(self, u: int) -> bool:
        dom = self.state.dominated
        qd = any(not dom[x] for x in self.qd_parents(u))
        if not qd:
            return False
        st = self.st
        return any(st.is_parent[y] and not dom[y] and not self.quasi_dependent(y)
                   for y in self.nbrs(u))

    # ---- temporary axiom helpers
    def _anchor_green_t1(self, v: int) -> bool:
        return (self.st.is_anchor[v] and not self.leaf_white(v) and len(self.fw_deps(v)) == 1
                and len(self.undominated_abs(v)) <= 1)

    def _qd_green(self, x: int, need_f0: bool) -> bool:
        u = self.quasi_anchor(x)
        if u < 0 or not self.leaf_white(x):
            return False
        if need_f0 and self.f(x) != 0:
            return False
        return any(y != x and self.fw(y) and (not need_f0 or self.f(y) == 0)
                   for y in self.qd_parents(u))

    def _t4u_b_green(self, v: int) -> bool:
        if not self._B[v] or self.leaf_white(v):
            return False
        cols = self.ledger.colors
        ok = False
        for p in self.nbrs(v):
            if cols[p] == W and self.safe(p):
                if all(cols[w] != G or w == v for w in self.nbrs(p)):
                    ok = True
                    break
        if not ok:
            return False
        if len(self.fw_parent_neighbors(v)) > 2:
            return False
        return not self.mixed_qa(v)

    def green_allowed(self, ax: str, v: int) -> bool:
        st = self.st
        if self.safe_or_pseudo(v):
            return True
        if ax == "T1":
            return self._anchor_green_t1(v)
        anchor_ok = st.is_anchor[v] and bool(self.fw_deps(v))
        if anchor_ok:
            return True
        if ax == "T3":
            if self.bridgehead(v):
                if len(self.fw_abs(v)) <= 1 or len(self.fw_parent_neighbors(v)) == 2:
                    return True
            return False
        if ax == "T4":
            if self.bridgehead(v) and len(self.fw_abs(v)) <= 1:
                return True
            if self.semi_trident(v):
                return True
            return self._qd_green(v, need_f0=True)
        if ax in ("T4p", "T4u"):
            if self.bridgehead(v) or self._qd_green(v, need_f0=False):
                return True
            return ax == "T4u" and self._t4u_b_green(v)
        raise ValueError(ax)

    def t2_ok(self, u: int) -> bool:
        if self.fw_deps(u):
            return True
        if self.st.is_dep[u] and self.safe(u):
            return True  # mutual anchors of a path component on four vertices
        return not self.leaf_white(u) and len(self.undominated_abs(u)) <= 1

    def t6_witness(self, s: int) -> Optional[int]:
        dom = self.state.dominated
        for x in self.nbrs(s):
            if not dom[x] and self.residual(x) and self.f(x) == 0:
                return x
        return None

    def t7_witness(self, s: int) -> Optional[tuple[int, int]]:
        dom = self.state.dominated
        for x in self.nbrs(s):
            if dom[x] or self.f(x) != 0:
                continue
            u = self.quasi_anchor(x)
            if u < 0:
                continue
            for y in self.qd_parents(u):
                if y != x and not dom[y] and self.f(y) == 0:
                    return (x, y)
        return None

    # ---- snapshot
    def freeze_snapshot(self) -> Snapshot:
        if self.snapshot is not None:
            raise RuntimeError("snapshot already frozen")
        st = self.st
        A, R = set(), set()
        for v in range(st.n):
            if st.is_anchor[v] or st.is_dep[v] or st.is_ab[v]:
                A.add(v)
            elif self.bridgehead(v):
                A.add(v)
                if len(self.fw_abs(v)) == 3:
                    R.add(v)
        Bset = {v for v in range(st.n) if not st.is_leaf[v] and v not in A}
        snap = Snapshot(frozenset(A), frozenset(Bset), frozenset(R), self.state.time)
        self._set_snapshot(snap)
        return snap

    def dump(self) -> list[dict]:
        """Per-vertex classification table."""
        st = self.st
        rows = []
        for v in range(st.n):
            rows.append({
                "v": v, "color": self.ledger.colors[v].label, "dominated": self.dom[v],
                "leaf": st.is_leaf[v], "parent": st.is_parent[v], "dependent": st.is_dep[v],
                "anchor": st.is_anchor[v], "anchor_bridge_of": list(st.ab_owners[v]),
                "fully_white": self.fw(v), "safe": self.safe(v), "pseudo_safe": self.pseudo_safe(v),
                "bridgehead": self.bridgehead(v), "trident": self.trident(v),
                "semi_trident": self.semi_trident(v), "A": self._A[v], "B": self._B[v],
                "R": self._R[v], "quasi_anchor": self.quasi_anchor(v),
            })
        return rows


def classify(g: Graph, state, ledger, snapshot: Optional[Snapshot] = None) -> View:
    return View(Structure(g), state, ledger, snapshot)


# ---------------------------------------------------------------- observations
#
# Each check returns a list of witnesses (empty when the observation holds).


def obs_anchor_no_white_leaf(v: View) -> list:
    st = v.st
    return [u for u in range(st.n) if st.is_anchor[u] and v.leaf_white(u)
            and not (st.is_dep[u] and v.safe(u))]


def obs_no_two_undominated_deps(v: View) -> list:
    st, dom = v.st, v.dom
    return [u for u in range(st.n) if st.is_anchor[u] and sum(not dom[p] for p in st.deps[u]) >= 2]


def obs_anchor_two_undominated_abs(v: View) -> list:
    st = v.st
    return [u for u in range(st.n) if st.is_anchor[u] and len(v.undominated_abs(u)) >= 2]


def obs_undominated_anchor(v: View) -> list:
    st, dom = v.st, v.dom
    out = []
    for u in range(st.n):
        if st.is_anchor[u] and not dom[u]:
            fwd = v.fw_deps(u)
            others = [p for p in v.fw_parent_neighbors(u) if p not in fwd]
            if len(fwd) > 1 or others:
                out.append(u)
    return out


def obs_undominated_A_next_to_B_leafed(v: View) -> list:
    st, dom = v.st, v.dom
    out = []
    for u in range(st.n):
        if v.in_A(u) and not dom[u] and not v.in_R(u):
            for x in v.nbrs(u):
                if st.is_parent[x] and v.in_B(x) and v.leaf_white(x):
                    out.append((u, x))
    return out


def obs_undominated_parent_in_A(v: View) -> list:
    st, dom = v.st, v.dom
    return [x for x in range(st.n)
            if st.is_parent[x] and v.in_A(x) and not dom[x] and not (st.is_dep[x] or st.is_ab[x])]


def obs_no_cousins_inside_A(v: View) -> list:
    st, dom = v.st, v.dom
    out = []
    for x, y in st.graph.edges:
        if v.leaf_white(x) and v.leaf_white(y) and (v.in_A(x) or v.in_A(y)):
            if not (dom[x] and dom[y]):
                out.append((x, y))
    return out


def obs_semi_trident_transitional(v: View) -> list:
    dom = v.dom
    out = []
    for s in range(v.st.n):
        if not v.semi_trident(s):
            continue
        for x in v.nbrs(s):
            u = v.quasi_anchor(x)
            if u >= 0 and not dom[x]:
                if any(y != x and not dom[y] for y in v.qd_parents(u)):
                    out.append((s, x, u))
    return out


def obs_semi_trident_residual(v: View) -> list:
    dom = v.dom
    return [(s, x) for s in range(v.st.n) if v.semi_trident(s)
            for x in v.nbrs(s) if not dom[x] and v.residual(x)]


def obs_undominated_A_next_to_B_full(v: View) -> list:
    st, dom = v.st, v.dom
    out = []
    for u in range(st.n):
        if v.in_A(u) and not dom[u]:
            for x in v.nbrs(u):
                if st.is_parent[x] and v.in_B(x) and v.leaf_white(x):
                    out.append((u, x))
    return out


def obs_anchor_bridge_uncles(v: View) -> list:
    st, dom = v.st, v.dom
    out = []
    for u in range(st.n):
        fab = v.fw_abs(u)
        if not fab:
            continue
        if v.leaf_white(u):
            out.append(u)
            continue
        ok = (dom[u] and len(v.undominated_abs(u)) <= 1) or (dom[u] and v.semi_trident(u)) \
            or (len(v.fw_parent_neighbors(u)) <= 1 and not v.in_R(u))
        if not ok:
            out.append(u)
    return out


def obs_quasi_anchor_no_leaf(v: View) -> list:
    dom = v.dom
    out = []
    for x in range(v.st.n):
        if not v.leaf_white(x):
            continue
        for y in v.qd_parents(x):
            if v.leaf_white(y) and not (dom[x] and dom[y]):
                out.append((x, y))
    return out


def obs_core_parents(v: View) -> list:
    cols = v.col
    out = []
    dom = v.dom
    for x in range(v.st.n):
        if v.fw(x) and not dom[x]:
            nb = [w for w in v.b_neighbors(x) if cols[w] != Y]
            if len(nb) > 1:
                out.append(x)
    return out


def obs_yellow_bad_uncle(v: View) -> list:
    cols = v.col
    out = []
    for u in range(v.st.n):
        if v.in_B(u) and (v.mixed_qa(u) or len(v.fw_parent_neighbors(u)) >= 3) and cols[u] != Y:
            out.append(u)
    return out


def obs_yellow_cousin(v: View) -> list:
    dom, cols = v.dom, v.col
    out = []
    for x, y in v.st.graph.edges:
        if v.leaf_white(x) and v.leaf_white(y):
            if not dom[x] and not dom[y]:
                out.append((x, y))
            elif not dom[x] and cols[y] != Y:
                out.append((x, y))
            elif not dom[y] and cols[x] != Y:
                out.append((y, x))
    return out


def obs_parents_resolved(v: View) -> list:
    st, cols = v.st, v.col
    return [x for x in range(st.n) if st.is_parent[x] and cols[x] == W]


OBSERVATIONS = [
    # (established after phase, name, check)
    (1, "anchor-no-white-leaf", obs_anchor_no_white_leaf),
    (1, "no-two-undominated-dependent-parents", obs_no_two_undominated_deps),
    (1, "anchor-two-undominated-anchor-bridges", obs_anchor_two_undominated_abs),
    (1, "undominated-anchor", obs_undominated_anchor),
    (2, "undominated-A-next-to-B-leafed-parent", obs_undominated_A_next_to_B_leafed),
    (2, "undominated-parent-in-A", obs_undominated_parent_in_A),
    (2, "no-cousins-inside-A", obs_no_cousins_inside_A),
    (3, "semi-trident-transitional", obs_semi_trident_transitional),
    (3, "semi-trident-residual", obs_semi_trident_residual),
    (3, "undominated-A-next-to-B-full", obs_undominated_A_next_to_B_full),
    (3, "anchor-bridge-uncles", obs_anchor_bridge_uncles),
    (4, "quasi-anchor-no-leaf", obs_quasi_anchor_no_leaf),
    (5, "core-parents", obs_core_parents),
    (6, "yellow-bad-uncle", obs_yellow_bad_uncle),
    (6, "yellow-cousin", obs_yellow_cousin),
    (10, "parents-resolved", obs_parents_resolved),
]


class ObservationError(AssertionError):
    def __init__(self, name: str, witnesses: list, phase: int, time: int):
        self.name, self.witnesses, self.phase, self.time = name, witnesses, phase, time
        super().__init__(f"observation {name} fails after phase {phase} at t={time}: {witnesses[:5]}")


def check_observations(v: View, completed_phase: int) -> None:
    """Assert every observation established by phases <= completed_phase."""
    for after, name, fn in OBSERVATIONS:
        if after <= completed_phase:
            bad = fn(v)
            if bad:
                raise ObservationError(name, bad, completed_phase, v.time)


# --------------------------------------------------------------- uncle stats


def uncle_stats(v: View) -> dict:
    st, cols = v.st, v.col
    white_parents = [x for x in range(st.n) if st.is_parent[x] and cols[x] == W]
    uncles = sorted({u for x in white_parents for u in st.adj[x] if not st.is_leaf[u]})
    valency = {u: sum(1 for w in st.adj[u] if cols[w] == W) for u in uncles}
    split = {x: st.deg[x] - 1 for x in white_parents}
    true_anchor = {u for u in range(st.n)
                   if st.is_anchor[u] and any(cols[p] == W for p in st.deps[u])}
    true_ab = {z for z in white_parents if st.is_ab[z] and any(w in true_anchor for w in st.adj[z])}
    return {"white_parents": white_parents, "uncles": uncles, "valency": valency,
            "split": split, "true_anchors": sorted(true_anchor),
            "true_anchor_bridges": sorted(true_ab)}
