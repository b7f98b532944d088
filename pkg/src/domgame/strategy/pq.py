"""Parent/citrus counting sets for the late game.

A PQ instance is a non-empty set P of undominated parents, citrus vertices Q whose
undominated neighbors lie in P, yellow Y1 inside Q and yellow Y2 outside Q whose
non-leaf white neighbors lie in P. Dominator plays the parents of P in order and
the spent moves pay for themselves when 3|P| <= 4|Q| + |Y1| + |Y2| (one unit of
slack is allowed for odd |P|).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from ..ledger import CITRUS, W, Y

ENUM_LIMIT = 12


@dataclass(frozen=True)
class PQInstance:
    P: tuple
    Q: tuple
    Y1: tuple = ()
    Y2: tuple = ()

    @property
    def slack(self) -> int:
        return 4 * len(self.Q) + len(self.Y1) + len(self.Y2) - 3 * len(self.P)

    def as_dict(self) -> dict:
        return {"P": list(self.P), "Q": list(self.Q), "Y1": list(self.Y1), "Y2": list(self.Y2),
                "slack": self.slack}


def pq_feasible(p: int, q: int, y1: int = 0, y2: int = 0) -> bool:
    """The counting condition on set sizes."""
    if p <= 0:
        return False
    s = 4 * q + y1 + y2 - 3 * p
    return s >= 0 or (p % 2 == 1 and s >= -1)


def instance_errors(view, inst: PQInstance) -> list[str]:
    """Precondition failures of an explicit instance (empty when valid)."""
    st, dom, col = view.st, view.dom, view.col
    P = set(inst.P)
    errs = []
    if not P:
        errs.append("P is empty")
    for p in P:
        if not st.is_parent[p] or dom[p]:
            errs.append(f"{p} is not an undominated parent")
    for q in inst.Q:
        if col[q] not in CITRUS:
            errs.append(f"{q} in Q is not citrus")
        if any(not dom[w] and w not in P for w in st.adj[q]):
            errs.append(f"{q} in Q has an undominated neighbor outside P")
    for y in inst.Y1:
        if y not in inst.Q or col[y] != Y:
            errs.append(f"{y} in Y1 is not a yellow vertex of Q")
    for y in inst.Y2:
        if y in inst.Q or col[y] != Y:
            errs.append(f"{y} in Y2 is not a yellow vertex outside Q")
        if any(col[w] == W and not st.is_leaf[w] and w not in P for w in st.adj[y]):
            errs.append(f"{y} in Y2 has a white non-leaf neighbor outside P")
    return errs


def complete(view, P: Iterable[int]) -> PQInstance:
    """Maximal Q, Y1 and Y2 for a given P."""
    st, dom, col = view.st, view.dom, view.col
    Pset = set(P)
    around = {w for p in Pset for w in view.nbrs(p) if not st.is_leaf[w]}
    Q, Y2 = [], []
    for q in sorted(around):
        if col[q] not in CITRUS:
            continue
        if all(dom[w] or w in Pset for w in view.nbrs(q)):
            Q.append(q)
        elif col[q] == Y and all(col[w] != W or st.is_leaf[w] or w in Pset for w in view.nbrs(q)):
            Y2.append(q)
    Y1 = [q for q in Q if col[q] == Y]
    return PQInstance(tuple(sorted(Pset)), tuple(Q), tuple(Y1), tuple(Y2))


def white_parents(view) -> list[int]:
    st, col = view.st, view.col
    return [x for x in view.scan(range(st.n)) if st.is_parent[x] and col[x] == W and not view.dom[x]]


def clusters(view) -> list[list[int]]:
    """White parents grouped by shared non-leaf neighbors."""
    st = view.st
    wp = white_parents(view)
    parent = {x: x for x in wp}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner = {}
    for x in wp:
        for u in view.nbrs(x):
            if st.is_leaf[u]:
                continue
            if u in owner:
                ra, rb = find(owner[u]), find(x)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[u] = x
    groups: dict[int, list[int]] = {}
    for x in wp:
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def _ok(inst: PQInstance) -> bool:
    return pq_feasible(len(inst.P), len(inst.Q), len(inst.Y1), len(inst.Y2))


def _neighborhood_sets(view, cluster: list[int]) -> list[list[int]]:
    st = view.st
    members = set(cluster)
    out = []
    for seed in cluster:
        cur = {seed}
        for _ in range(3):
            nxt = set(cur)
            for x in cur:
                for u in view.nbrs(x):
                    if not st.is_leaf[u]:
                        nxt.update(w for w in view.nbrs(u) if w in members)
            if nxt == cur:
                break
            cur = nxt
            out.append(sorted(cur))
    return out


def find_pq(view, limit: int = ENUM_LIMIT) -> Optional[PQInstance]:
    """A feasible instance if one exists.

    The slack is additive over clusters, so a feasible union of clusters always
    contains a feasible single cluster part; searching clusters one by one loses
    nothing. Clusters of at most `limit` parents are enumerated exhaustively.
    """
    for cl in clusters(view):
        if len(cl) <= limit:
            for k in range(1, len(cl) + 1):
                for P in combinations(cl, k):
                    inst = complete(view, P)
                    if _ok(inst):
                        return inst
        else:
            for P in [cl] + _neighborhood_sets(view, cl):
                inst = complete(view, P)
                if _ok(inst):
                    return inst
    return None


# ---------------------------------------------------------------- final count

def final_counting(view) -> dict:
    """Type counts of the remaining white parents and their uncles, with the linear constraints."""
    st, col = view.st, view.col
    wp = white_parents(view)
    wpset = set(wp)
    true_anchor = {u for u in range(st.n) if st.is_anchor[u] and any(col[p] == W for p in st.deps[u])}
    true_ab = {z for z in wp if st.is_ab[z] and any(w in true_anchor for w in st.adj[z])}
    uncles = sorted({u for x in wp for u in st.adj[x] if not st.is_leaf[u]})
    valency = {u: sum(1 for w in st.adj[u] if col[w] == W) for u in uncles}
    split = {x: st.deg[x] - 1 for x in wp}
    near_ta = {x for x in wp if any(w in true_anchor for w in st.adj[x])}
    q = {
        "alpha": sum(1 for x in wp if st.is_dep[x]),
        "beta": len(true_ab),
        "gamma": sum(1 for x in wp if split[x] == 2 and x not in true_ab),
        "delta": sum(1 for x in wp if split[x] >= 3 and x in near_ta),
        "epsilon": sum(1 for x in wp if split[x] >= 3 and x not in near_ta),
        "phi": len(true_anchor),
        "chi": sum(1 for u in uncles if u not in true_anchor and valency[u] == 2),
        "psi": sum(1 for u in uncles if valency[u] == 3 and any(w in true_ab for w in st.adj[u])),
        "omega": sum(1 for u in uncles if valency[u] == 3 and not any(w in true_ab for w in st.adj[u])),
    }
    a, b, g, d, e = q["alpha"], q["beta"], q["gamma"], q["delta"], q["epsilon"]
    f, c, s, o = q["phi"], q["chi"], q["psi"], q["omega"]
    q["P"], q["Q"] = len(wpset), len(uncles)
    q["checks"] = {
        "anchors": a == f == b + d,
        "bridges": b <= s,
        "valency-two": g + e <= 2 * c,
        "valency-three": b + g + 2 * d + 2 * e <= 3 * s + 3 * o,
        "chained": 3 * len(wpset) <= 4 * len(uncles),
        "valency-range": all(valency[u] in (2, 3) for u in uncles),
    }
    return q


def final_counting_assert(view) -> dict:
    q = final_counting(view)
    bad = [k for k, ok in q["checks"].items() if not ok]
    if bad:
        raise AssertionError(f"final counting fails {bad}: { {k: v for k, v in q.items() if k != 'checks'} }")
    return q
