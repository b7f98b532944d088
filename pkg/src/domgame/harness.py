"""Game driver, corpus verification, benchmarks, trace audit and interactive play."""
from __future__ import annotations

import hashlib
import json
import time as _time
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Callable, Iterable, Optional

from .adversaries import (SearchLimit, Staller, WorstCase, make_staller, worst_case_search)
from .graph import Graph, all_isolate_free, hat, random_isolate_free
from .ledger import (AxiomViolation, Color, ColorLedger, _transition_violations, RecolorTx,
                     set_phase_axioms, validate)
from .oracle import bound_d, bound_s, gamma_g
from .reductions import build_player, reduce
from .rules import GIFT, Action, GameState, Player, Variant
from .strategy import StrategyError
from .taxonomy import ObservationError, Structure, View, check_observations

ADVERSARIES = ("random", "greedy", "gift", "stress", "worst")
LABELS = {c.label: c for c in Color}


def graph_id(g: Graph) -> str:
    h = hashlib.sha1(json.dumps([g.n, [list(e) for e in g.edges]]).encode()).hexdigest()
    return h[:12]


@dataclass
class RunReport:
    graph_id: str
    n: int
    m: int
    variant: str
    start: str
    adversary: str
    seed: int
    moves_played: int = 0
    bound: int = 0
    checkpoints: list = field(default_factory=list)
    phase_transitions: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    wall_time: float = 0.0
    touches: list = field(default_factory=list)
    final_pi: list = field(default_factory=list)
    reductions: list = field(default_factory=list)
    substitutions: int = 0
    trace: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self, with_trace: bool = False) -> dict:
        d = asdict(self)
        if not with_trace:
            d.pop("trace")
        return d


def _violation(axiom: str, vertices=(), phase: int = 0, t: int = 0, detail: str = "") -> dict:
    return {"axiom": axiom, "vertices": list(vertices), "phase": phase, "time": t, "detail": detail}


def _from_error(e: Exception, t: int) -> dict:
    if isinstance(e, StrategyError):
        cause = e.__cause__
        verts: list = []
        if isinstance(cause, AxiomViolation):
            verts = sorted({v for viol in cause.violations for v in viol.vertices})
        elif isinstance(cause, ObservationError):
            verts = list(cause.witnesses)
        return _violation(e.kind, verts, e.phase, e.time, str(e))
    return _violation(type(e).__name__, (), 0, t, str(e))


class _LineStaller(Staller):
    """Replays Staller's choices from a worst-case line."""

    name = "worst"

    def __init__(self, line: list):
        self.moves = [v for who, v in line if who == "S"]

    def choose(self, state, player=None) -> Action:
        v = self.moves.pop(0)
        return GIFT if v is None else Action.play(v)


def _staller_for(name: str, g: Graph, start: str, seed: int, variant: str) -> Staller:
    if name != "worst":
        return make_staller(name, seed)
    if variant != "gift":
        raise ValueError("the worst-case adversary is defined for the move-gift variant")
    wc = worst_case_search(g, lambda: build_player(g, start, trace=False), start)
    return _LineStaller(wc.line)


def simulate(g: Graph, staller="random", variant: str = "gift", start: str = "d", seed: int = 0,
             trace: bool = True, full_validation: Optional[bool] = None,
             observations: bool = True) -> RunReport:
    """Play one game of the strategy against an adversary; violations are collected, not raised.

    In the standard variant the strategy runs in a shadow move-gift game. A directive
    that is illegal in the real game is replaced by the lowest-id legal vertex.
    """
    t0 = _time.perf_counter()
    name = staller if isinstance(staller, str) else getattr(staller, "name", "custom")
    rep = RunReport(graph_id(g), g.n, g.m, variant, start, name, seed,
                    bound=bound_d(g.n) if start == "d" else bound_s(g.n))
    rep.reductions = [s.as_dict() for s in reduce(g)] if start == "d" else []
    starter = Player.DOMINATOR if start == "d" else Player.STALLER
    player = build_player(g, start, full_validation=full_validation, observations=observations,
                          trace=trace)
    if variant == "gift":
        real = player.state
    elif variant == "standard":
        real = GameState(g, Variant.STANDARD, starter)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    try:
        adv = staller if isinstance(staller, Staller) else _staller_for(staller, g, start, seed, variant)
        cap = 2 * g.n
        while not real.over:
            if real.time > cap:
                rep.violations.append(_violation("safety-cap", (), 0, real.time,
                                                 f"more than {cap} moves"))
                break
            if real.turn is Player.DOMINATOR:
                v = player.move()
                if variant == "standard":
                    if v is None or not real.playable(v):
                        v = next(w for w in range(g.n) if real.playable(w))
                        rep.substitutions += 1
                    real.play_inplace(v)
            else:
                a = adv.choose(real, player)
                if variant == "standard":
                    real.play_inplace(a.vertex)
                    if player.state.turn is Player.STALLER and not player.over:
                        player.observe(a)
                else:
                    player.observe(a)
    except Exception as e:  # engine errors are data for the report
        rep.violations.append(_from_error(e, real.time))
    rep.moves_played = real.time
    if rep.moves_played > rep.bound:
        rep.violations.append(_violation("bound", (), 0, real.time,
                                         f"{rep.moves_played} moves > bound {rep.bound}"))
    for d in player.dominators():
        rep.checkpoints += [list(c) for c in d.checkpoints]
        rep.phase_transitions += [list(p) for p in d.transitions]
        rep.touches += d.move_touches
        rep.final_pi.append(d.ledger.pi)
        if d.ledger.pi > 6 * d.graph.n:
            rep.violations.append(_violation("final-pi", (), d.phase, d.time))
        if trace:
            rep.trace.append(d.header())
            rep.trace.extend(d.events or [])
    if trace:
        rep.trace.insert(0, {"event": "game", "n": g.n, "edges": [list(e) for e in g.edges],
                             "variant": variant, "start": start, "adversary": name,
                             "seed": seed, "reductions": rep.reductions})
        rep.trace.append({"event": "end", "moves": rep.moves_played, "bound": rep.bound,
                          "log": [[t, p.value, a.vertex] for t, p, a in real.move_log]})
    rep.wall_time = _time.perf_counter() - t0
    return rep


def write_trace(rep: RunReport, path: str) -> None:
    with open(path, "w") as fh:
        for rec in rep.trace:
            fh.write(json.dumps(rec) + "\n")


# ---------------------------------------------------------------- audit

def _read_trace(src) -> list[dict]:
    if isinstance(src, list):
        return src
    with open(src) as fh:
        return [json.loads(line) for line in fh if line.strip()]


class _Replay:
    """Independent replay of one engine section with full validation after every step."""

    def __init__(self, header: dict):
        self.g = Graph(header["n"], [tuple(e) for e in header["edges"]])
        self.state = GameState(self.g, Variant.MOVE_GIFT, Player.DOMINATOR)
        self.ledger = ColorLedger(self.g.n)
        self.view = View(Structure(self.g), self.state, self.ledger)
        self.errors: list[str] = []

    def err(self, i: int, msg: str) -> None:
        self.errors.append(f"event {i}: {msg}")

    def step(self, i: int, ev: dict) -> None:
        kind = ev.get("event")
        st, led = self.state, self.ledger
        if kind == "move":
            who, v = ev["played"]["player"], ev["played"]["vertex"]
            if who != st.turn.value:
                self.err(i, f"{who} moved on {st.turn.value}'s turn")
            if who == "S" and not st.playable(v):
                self.err(i, f"Staller played unplayable vertex {v}")
            newly = st.play_inplace(v)
            if sorted(newly) != ev.get("newly", sorted(newly)):
                self.err(i, f"newly dominated {sorted(newly)} != recorded {ev['newly']}")
        elif kind == "gift":
            if st.turn is not Player.STALLER:
                self.err(i, "gift on Dominator's turn")
            st.gift_inplace()
        elif kind == "recolor":
            tx = RecolorTx({v: LABELS[c] for v, c in ev["recolors"]}, ev.get("min_earn"), ev["case_or_rule"])
            d = sum(led.colors[v] - c for v, c in tx.changes.items())
            if d != ev["delta"]:
                self.err(i, f"delta {d} != recorded {ev['delta']}")
            if tx.min_earn is not None and d < tx.min_earn:
                self.err(i, f"{tx.rule} earns {d} < {tx.min_earn}")
            for viol in _transition_violations(tx, led, self.view):
                self.err(i, f"transition {viol}")
            for v, c in tx.changes.items():
                led.colors[v] = c
            led.pi += d
            for viol in validate(led, self.view):
                self.err(i, f"axiom {viol}")
        elif kind == "snapshot":
            snap = self.view.freeze_snapshot().as_dict()
            if snap != ev.get("snapshot"):
                self.err(i, "snapshot differs from the recorded one")
        elif kind == "phase":
            new = ev["phase"]
            try:
                check_observations(self.view, new - 1)
            except ObservationError as e:
                self.err(i, str(e))
            try:
                set_phase_axioms(led, new, self.view)
            except (AxiomViolation, ValueError) as e:
                self.err(i, f"entering phase {new}: {e}")
        elif kind == "checkpoint":
            if led.pi < 10 * st.time:
                self.err(i, f"checkpoint pi={led.pi} < 10t={10 * st.time}")
        if kind in ("move", "gift", "recolor", "snapshot", "phase", "checkpoint", "start"):
            if ev.get("pi") != led.pi:
                self.err(i, f"pi {ev.get('pi')} != replayed {led.pi}")
            if ev.get("t") != st.time:
                self.err(i, f"t {ev.get('t')} != replayed {st.time}")

    def finish(self) -> None:
        if self.state.over and self.ledger.pi != 6 * self.g.n:
            self.errors.append(f"final pi {self.ledger.pi} != 6n = {6 * self.g.n}")
        if self.ledger.pi > 6 * self.g.n:
            self.errors.append(f"pi {self.ledger.pi} exceeds 6n")


def audit_replay(src) -> dict:
    """Replay a trace (file path or list of records) from scratch; {'ok', 'errors'}."""
    recs = _read_trace(src)
    errors: list[str] = []
    cur: Optional[_Replay] = None
    game = None
    for i, ev in enumerate(recs):
        kind = ev.get("event")
        if kind == "game":
            game = ev
        elif kind == "header":
            if cur is not None:
                cur.finish()
                errors += cur.errors
            cur = _Replay(ev)
        elif kind == "end":
            if game is not None:
                errors += _audit_real(game, ev)
        elif cur is not None:
            try:
                cur.step(i, ev)
            except (KeyError, ValueError, TypeError, IndexError) as e:
                cur.err(i, f"malformed {kind} record: {e!r}")
        else:
            errors.append(f"event {i}: {kind} before any header")
    if cur is not None:
        cur.finish()
        errors += cur.errors
    return {"ok": not errors, "errors": errors}


def _audit_real(game: dict, end: dict) -> list[str]:
    g = Graph(game["n"], [tuple(e) for e in game["edges"]])
    variant = Variant.STANDARD if game["variant"] == "standard" else Variant.MOVE_GIFT
    s = GameState(g, variant, Player.DOMINATOR if game["start"] == "d" else Player.STALLER)
    out = []
    for t, who, v in end["log"]:
        if who != s.turn.value:
            out.append(f"real game: {who} moved on {s.turn.value}'s turn")
        if v is None:
            if variant is Variant.STANDARD or s.turn is Player.DOMINATOR:
                out.append("real game: illegal gift")
            s.gift_inplace()
            continue
        if (variant is Variant.STANDARD or who == "S") and not s.playable(v):
            out.append(f"real game: {who} played unplayable {v}")
        s.play_inplace(v)
    if end["log"] and not s.over:
        out.append("real game ended with undominated vertices")
    bound = bound_d(g.n) if game["start"] == "d" else bound_s(g.n)
    if s.time > bound or s.time != end["moves"]:
        out.append(f"real game: {s.time} moves (recorded {end['moves']}, bound {bound})")
    return out


# ---------------------------------------------------------------- corpus

def corpus_exhaustive(nmax: int, nmin: int = 2) -> Iterable[Graph]:
    for n in range(nmin, nmax + 1):
        yield from all_isolate_free(n)


def corpus_random(count: int, seed: int, nmin: int = 8, nmax: int = 14) -> Iterable[Graph]:
    import random
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(nmin, nmax)
        p = rng.choice((0.12, 0.18, 0.25, 0.35))
        yield random_isolate_free(n, p, rng.randrange(1 << 30))


def check_graph(g: Graph, adversaries=("random", "greedy", "gift", "stress"), seed: int = 0,
                worst_cap: int = 8, oracle_cap: int = 10, audit: bool = True,
                worst_nodes: Optional[int] = 200000) -> dict:
    """Every check for one graph: simulations with audit, worst case and oracle bounds."""
    res = {"graph_id": graph_id(g), "n": g.n, "m": g.m, "violations": [], "games": 0,
           "checkpoints": 0}
    longest = 0
    for name in adversaries:
        rep = simulate(g, name, "gift", "d", seed)
        res["games"] += 1
        res["checkpoints"] += len(rep.checkpoints)
        longest = max(longest, rep.moves_played)
        res["violations"] += [dict(v, adversary=name) for v in rep.violations]
        if audit:
            a = audit_replay(rep.trace)
            res["violations"] += [_violation("audit", detail=e) | {"adversary": name}
                                  for e in a["errors"][:5]]
    if g.n <= worst_cap:
        for start, bound in (("d", bound_d(g.n)), ("s", bound_s(g.n))):
            try:
                wc = worst_case_search(g, lambda: build_player(g, start, trace=False), start,
                                       max_nodes=worst_nodes)
            except SearchLimit:
                res.setdefault("skipped", []).append(f"worst-{start}")
                continue
            except Exception as e:
                res["violations"].append(_from_error(e, 0) | {"adversary": f"worst-{start}"})
                continue
            res[f"worst_{start}"] = wc.moves
            if wc.moves > bound:
                res["violations"].append(_violation("bound", detail=f"worst {start}: {wc.moves} > {bound}"))
            if start == "d" and wc.moves < longest:
                res["violations"].append(_violation("worst-dominance",
                                                    detail=f"worst {wc.moves} < simulated {longest}"))
    if g.n <= oracle_cap:
        od, os_ = gamma_g(g, "d").value, gamma_g(g, "s").value
        res["gamma_g"], res["gamma_g_staller"] = od, os_
        if od > bound_d(g.n) or os_ > bound_s(g.n):
            res["violations"].append(_violation("oracle-bound", detail=f"{od}, {os_}"))
        if "worst_d" in res and res["worst_d"] < od:
            res["violations"].append(_violation("worst-below-oracle",
                                                detail=f"{res['worst_d']} < {od}"))
    res["ok"] = not res["violations"]
    return res


def _check_edges(args) -> dict:
    (n, edges), kw = args
    return check_graph(Graph(n, [tuple(e) for e in edges]), **kw)


def verify_corpus(graphs: Iterable[Graph], workers: int = 1,
                  on_result: Optional[Callable[[dict], None]] = None, **kw) -> dict:
    """Run check_graph on every graph; returns an aggregate summary."""
    summary = {"graphs": 0, "games": 0, "checkpoints": 0, "violations": 0, "failed": []}

    def take(r: dict) -> None:
        summary["graphs"] += 1
        summary["games"] += r["games"]
        summary["checkpoints"] += r["checkpoints"]
        if r["violations"]:
            summary["violations"] += len(r["violations"])
            summary["failed"].append(r)
        if on_result:
            on_result(r)

    if workers <= 1:
        for g in graphs:
            take(check_graph(g, **kw))
    else:
        jobs = (((g.n, [list(e) for e in g.edges]), kw) for g in graphs)
        with Pool(workers) as pool:
            for r in pool.imap(_check_edges, jobs, chunksize=8):
                take(r)
    summary["ok"] = summary["violations"] == 0
    return summary


# ---------------------------------------------------------------- benchmark

def hat_random(base_n: int, avg_deg: float = 4.0, seed: int = 0) -> Graph:
    """hat of a sparse random graph with about avg_deg * base_n / 2 edges (linear-time generator)."""
    import random
    rng = random.Random(seed)
    target = int(avg_deg * base_n / 2)
    edges = set()
    for v in range(base_n):  # a random partner for everyone keeps the base isolate-free
        w = rng.randrange(base_n - 1)
        w += w >= v
        edges.add((min(v, w), max(v, w)))
    while len(edges) < target:
        u, w = rng.randrange(base_n), rng.randrange(base_n)
        if u != w:
            edges.add((min(u, w), max(u, w)))
    return hat(Graph(base_n, edges))


def bench_move_cost(graphs: Iterable[Graph], moves: Optional[int] = 40, seed: int = 0) -> dict:
    """Touches per Dominator directive over the first `moves` turns of a game against a random Staller."""
    from .strategy import Dominator
    rows = []
    for g in graphs:
        t0 = _time.perf_counter()
        d = Dominator(g, full_validation=False, observations=False, trace=False)
        adv = make_staller("random", seed)
        while not d.over and (moves is None or len(d.move_touches) < moves):
            if d.state.turn is Player.DOMINATOR:
                d.move()
            else:
                d.observe(adv.choose(d.state, d))
        mt = d.move_touches or [0]
        rows.append({"n": g.n, "m": g.m, "directives": len(d.move_touches),
                     "avg_touches": sum(mt) / len(mt), "max_touches": max(mt),
                     "max_per_m": max(mt) / max(g.m, 1), "seconds": _time.perf_counter() - t0})
    ratios = [r["max_per_m"] for r in rows if r["max_touches"]]
    spread = max(ratios) / min(ratios) if ratios else 0.0
    xs, ys = [r["m"] for r in rows], [r["max_touches"] for r in rows]
    slope = 0.0
    if len(rows) > 1:
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        den = sum((x - mx) ** 2 for x in xs)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / den if den else 0.0
    return {"rows": rows, "ratio_spread": spread, "slope": slope}


# ---------------------------------------------------------------- interactive

def play_interactive(g: Graph, variant: str = "gift", start: str = "d",
                     read: Optional[Callable[[str], str]] = None,
                     write: Callable[[str], None] = print) -> RunReport:
    """Human plays Staller from the terminal (vertex id or 'gift')."""
    read = read or input

    class Human(Staller):
        name = "human"

        def choose(self, state, player=None) -> Action:
            while True:
                try:
                    text = read(f"t={state.time} Staller> ").strip().lower()
                except EOFError:
                    raise KeyboardInterrupt
                if text == "gift":
                    if state.variant is Variant.STANDARD:
                        write("gifts are not allowed in the standard variant")
                        continue
                    return GIFT
                try:
                    v = int(text)
                except ValueError:
                    write("enter a vertex id or 'gift'")
                    continue
                if not (0 <= v < g.n) or not state.playable(v):
                    write(f"vertex {v} is not playable")
                    continue
                return Action.play(v)

    class Echo(Staller):
        name = "human"

        def __init__(self):
            self.inner = Human()

        def choose(self, state, player=None) -> Action:
            for d in player.dominators():
                cols = " ".join(f"{v}:{c.label[0]}" for v, c in enumerate(d.col))
                write(f"  phase {d.phase}  pi={d.ledger.pi}  colors {cols}")
            if state.move_log:
                t, who, a = state.move_log[-1]
                write(f"Dominator played {a.vertex}")
            return self.inner.choose(state, player)

    try:
        rep = simulate(g, Echo(), variant, start)
    except KeyboardInterrupt:
        write("aborted")
        raise
    write(f"game over after {rep.moves_played} moves (bound {rep.bound})")
    for v in rep.violations:
        write(f"violation: {v}")
    return rep
