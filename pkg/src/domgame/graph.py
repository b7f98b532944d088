"""Immutable simple graphs, edge-list I/O and the generator families."""
from __future__ import annotations

import io
import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union


class GraphFormatError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Instances are treated as immutable; copy/deepcopy return the instance itself.
    """

    __slots__ = ("n", "edges", "adj", "deg", "_adjset", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = tuple(sorted(seen))
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self.deg = tuple(len(a) for a in self.adj)
        self._adjset = None
        self._m = len(self.edges)

    @property
    def m(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        if self._adjset is None:
            self._adjset = tuple(frozenset(a) for a in self.adj)
        return v in self._adjset[u]

    def isolate_free(self) -> bool:
        return all(d > 0 for d in self.deg)

    def isolated(self) -> list[int]:
        return [v for v in range(self.n) if self.deg[v] == 0]

    def induced(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by `keep`, relabelled densely in increasing order."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(order), es), index

    def key(self) -> tuple:
        return (self.n, self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# --------------------------------------------------------------------------- I/O


def parse_edge_list(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", lineno)
        e = (min(a, b), max(a, b))
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def load_graph(source: Union[str, bytes, io.IOBase], format: str = "edge_list") -> Graph:
    """Read a graph from a path, bytes, or a text/binary stream."""
    if format != "edge_list":
        raise ValueError(f"unsupported format {format!r}")
    if isinstance(source, bytes):
        text = source.decode()
    elif isinstance(source, str):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode()
    return parse_edge_list(text)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def save_graph(g: Graph, format: str = "edge_list") -> bytes:
    if format != "edge_list":
        raise ValueError(f"unsupported format {format!r}")
    return format_edge_list(g).encode()


# -------------------------------------------------------------------- families


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(k: int) -> Graph:
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def random_isolate_free(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), then each isolated vertex gets one random partner."""
    if n < 2:
        raise ValueError("an isolate-free graph needs at least 2 vertices")
    rng = random.Random(seed)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in range(n):
        if deg[v] == 0:
            w = rng.randrange(n - 1)
            if w >= v:
                w += 1
            edges.add((min(v, w), max(v, w)))
            deg[v] += 1
            deg[w] += 1
    return Graph(n, edges)


def all_isolate_free(n: int) -> Iterator[Graph]:
    """Every labeled isolate-free graph on vertices 0..n-1 (edge subsets in binary order)."""
    pairs = list(itertools.combinations(range(n), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        cover = 0
        for u, v in edges:
            cover |= (1 << u) | (1 << v)
        if cover == full:
            yield Graph(n, edges)


def hat(base: Graph) -> Graph:
    """Append two dependent parents (each with a leaf) to every vertex.

    Vertex w gets parents n+4w, n+4w+2 with leaves n+4w+1, n+4w+3.
    """
    n = base.n
    edges = list(base.edges)
    for w in range(n):
        b = n + 4 * w
        edges += [(w, b), (b, b + 1), (w, b + 2), (b + 2, b + 3)]
    return Graph(5 * n, edges)


def _is_dependent_parent(g: Graph, v: int) -> bool:
    return g.deg[v] == 2 and any(g.deg[w] == 1 for w in g.adj[v])


def c_step(base: Graph, v: int) -> Graph:
    """Remove the leaf of dependent parent v and append three dependent parents to v.

    The removed leaf's id is compacted away; the six new vertices come last.
    """
    if not (0 <= v < base.n) or not _is_dependent_parent(base, v):
        raise ValueError(f"vertex {v} is not a dependent parent")
    leaf = next(w for w in base.adj[v] if base.deg[w] == 1)
    relabel = lambda x: x - 1 if x > leaf else x  # noqa: E731
    edges = [(relabel(a), relabel(b)) for a, b in base.edges if leaf not in (a, b)]
    nv = relabel(v)
    k = base.n - 1
    for i in range(3):
        p, lf = k + 2 * i, k + 2 * i + 1
        edges += [(nv, p), (p, lf)]
    return Graph(k + 6, edges)


def tilde(base: Graph, v: int, original: Optional[int] = None) -> Graph:
    """Append a single leaf to vertex v (which must be an original vertex)."""
    if original is not None and not (0 <= v < original):
        raise ValueError(f"vertex {v} is not in the original vertex set 0..{original - 1}")
    if not (0 <= v < base.n):
        raise ValueError(f"vertex {v} out of range")
    return Graph(base.n + 1, list(base.edges) + [(v, base.n)])


# ----------------------------------------------------------------- FamilySpec


FAMILIES = ("path", "cycle", "complete", "star", "random_isolate_free", "hat", "c_step", "tilde")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    base: Optional[Union["FamilySpec", Graph]] = None
    params: tuple = field(default_factory=tuple)

    def original_order(self) -> int:
        """Size of the graph G whose hat the spec is built on (for tilde checks)."""
        if self.family == "hat":
            return _base_graph(self).n
        if self.family in ("c_step", "tilde") and isinstance(self.base, FamilySpec):
            return self.base.original_order()
        raise ValueError(f"{self.family} has no original vertex set")

    def __str__(self) -> str:
        if self.family in ("hat", "c_step", "tilde"):
            inner = str(self.base) if isinstance(self.base, FamilySpec) else "graph"
            args = "".join(f",{p}" for p in self.params)
            return f"{self.family}({inner}{args})"
        return ":".join([self.family] + [str(p) for p in self.params])


def _base_graph(spec: FamilySpec) -> Graph:
    if spec.base is None:
        raise ValueError(f"{spec.family} requires a base graph")
    return spec.base if isinstance(spec.base, Graph) else generate(spec.base)


def generate(spec: FamilySpec) -> Graph:
    f, p = spec.family, spec.params
    if f == "path":
        if p[0] < 2:
            raise ValueError("path with fewer than 2 vertices is not isolate-free")
        return path(p[0])
    if f == "cycle":
        return cycle(p[0])
    if f == "complete":
        return complete(p[0])
    if f == "star":
        return star(p[0])
    if f == "random_isolate_free":
        n, prob, seed = p
        return random_isolate_free(int(n), float(prob), int(seed))
    if f == "hat":
        return hat(_base_graph(spec))
    if f == "c_step":
        base = _base_graph(spec)
        if isinstance(spec.base, FamilySpec) and spec.base.family not in ("hat", "c_step"):
            raise ValueError("c_step needs a hat or c_step base")
        return c_step(base, int(p[0]))
    if f == "tilde":
        if not isinstance(spec.base, FamilySpec) or spec.base.family not in ("hat", "c_step"):
            raise ValueError("tilde needs a hat or c_step base")
        return tilde(_base_graph(spec), int(p[0]), spec.base.original_order())
    raise ValueError(f"unknown family {f!r}")


def parse_family(text: str) -> FamilySpec:
    """Parse strings such as 'path:5', 'random:12:0.3:7', 'c_step(hat(complete:2),2)'."""
    text = text.strip()
    aliases = {"random": "random_isolate_free", "K": "complete"}
    m = re.fullmatch(r"([A-Za-z_]+)\((.*)\)", text)
    if m:
        name, body = m.group(1), m.group(2)
        depth, cut = 0, len(body)
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                cut = i
                break
        base = parse_family(body[:cut])
        params = tuple(int(x) for x in body[cut + 1:].split(",") if x.strip())
        return FamilySpec(name, base, params)
    parts = text.split(":")
    name = aliases.get(parts[0], parts[0])
    if name not in FAMILIES:
        raise ValueError(f"unknown family {parts[0]!r}")
    params = tuple(float(x) if "." in x else int(x) for x in parts[1:])
    return FamilySpec(name, None, params)
