"""Command line: simulate, verify, oracle, gen, bench, play, audit."""
from __future__ import annotations

import argparse
import json
import sys

from .graph import Graph, format_edge_list, generate, load_graph, parse_family
from . import harness
from .oracle import bound_d, bound_s, gamma_g


def _graph(args) -> Graph:
    if getattr(args, "graph", None):
        return load_graph(args.graph)
    if getattr(args, "family", None):
        fams = args.family if isinstance(args.family, list) else [args.family]
        return generate(parse_family(fams[0]))
    raise SystemExit("need --graph FILE or --family SPEC")


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_simulate(args) -> int:
    g = _graph(args)
    rep = harness.simulate(g, args.staller, args.variant, args.start, args.seed)
    if args.out:
        harness.write_trace(rep, args.out)
    print(json.dumps(rep.as_dict()))
    return 0 if rep.ok else 1


def cmd_verify(args) -> int:
    if args.exhaustive is not None:
        graphs = harness.corpus_exhaustive(args.exhaustive)
    elif args.random is not None:
        graphs = harness.corpus_random(args.random, args.seed, args.min_n, args.max_n)
    elif args.family:
        graphs = [generate(parse_family(f)) for f in args.family]
    elif args.graph:
        graphs = [load_graph(args.graph)]
    else:
        raise SystemExit("need --exhaustive N, --random COUNT, --family SPEC or --graph FILE")
    fh = open(args.out, "w") if args.out else None

    def on_result(r):
        if fh:
            fh.write(json.dumps(r) + "\n")

    try:
        summary = harness.verify_corpus(graphs, workers=args.workers, on_result=on_result,
                                        seed=args.seed, worst_cap=args.worst_cap,
                                        oracle_cap=args.oracle_cap, audit=not args.no_audit)
    finally:
        if fh:
            fh.close()
    summary["failed"] = [{k: r[k] for k in ("graph_id", "n", "m", "violations")}
                         for r in summary["failed"][:20]]
    print(json.dumps(summary, indent=2))
    return 0 if summary["ok"] else 1


def cmd_oracle(args) -> int:
    g = _graph(args)
    res = gamma_g(g, args.variant, prune=not args.no_prune)
    bound = bound_d(g.n) if args.variant == "d" else bound_s(g.n)
    print(json.dumps({"n": g.n, "value": res.value, "extremal": res.value == bound,
                      "states": res.explored_states}))
    return 0 if res.value <= bound else 1


def cmd_gen(args) -> int:
    g = _graph(args)
    text = format_edge_list(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    if args.family:
        graphs = (generate(parse_family(f)) for f in args.family)
    else:
        sizes = [int(s) for s in args.sizes.split(",")]
        graphs = (harness.hat_random(s, seed=args.seed) for s in sizes)
    res = harness.bench_move_cost(graphs, moves=args.moves or None, seed=args.seed)
    _emit(res, args.out)
    return 0


def cmd_play(args) -> int:
    g = _graph(args)
    print(f"graph with n={g.n}, m={g.m}; enter a vertex id or 'gift'")
    try:
        rep = harness.play_interactive(g, args.variant, args.start)
    except KeyboardInterrupt:
        return 1
    return 0 if rep.ok else 1


def cmd_audit(args) -> int:
    res = harness.audit_replay(args.trace)
    print(json.dumps(res, indent=2))
    return 0 if res["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="domgame", description="Domination game strategy and verifier")
    sub = p.add_subparsers(dest="cmd", required=True)

    def graph_opts(sp, multi=False):
        sp.add_argument("--graph", help="edge-list file ('n m' header, then one edge per line)")
        if multi:
            sp.add_argument("--family", action="append",
                            help="family spec, e.g. path:5, hat(complete:2); repeatable")
        else:
            sp.add_argument("--family", help="family spec, e.g. path:5 or hat(complete:2)")

    def game_opts(sp):
        sp.add_argument("--variant", choices=("standard", "gift"), default="gift")
        sp.add_argument("--start", choices=("d", "s"), default="d")

    sp = sub.add_parser("simulate", help="play one game against an adversary")
    graph_opts(sp)
    game_opts(sp)
    sp.add_argument("--staller", choices=harness.ADVERSARIES, default="random")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the JSON-lines trace here")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="check a corpus of graphs")
    graph_opts(sp, multi=True)
    sp.add_argument("--exhaustive", type=int, metavar="N", help="all labeled isolate-free graphs up to N")
    sp.add_argument("--random", type=int, metavar="COUNT", help="COUNT random graphs")
    sp.add_argument("--min-n", type=int, default=8)
    sp.add_argument("--max-n", type=int, default=14)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--worst-cap", type=int, default=8, help="worst-case search up to this n")
    sp.add_argument("--oracle-cap", type=int, default=10, help="oracle bounds up to this n")
    sp.add_argument("--no-audit", action="store_true")
    sp.add_argument("--out", help="per-graph JSON lines")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exact game domination number")
    graph_opts(sp)
    sp.add_argument("--variant", choices=("d", "s"), default="d")
    sp.add_argument("--no-prune", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="write a family graph as an edge list")
    graph_opts(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="touches per directive")
    graph_opts(sp, multi=True)
    sp.add_argument("--sizes", default="200,2000,20000",
                    help="base sizes for hat(random) graphs, comma separated")
    sp.add_argument("--moves", type=int, default=40, help="directives measured per graph; 0 plays whole games")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("play", help="play Staller interactively")
    graph_opts(sp)
    game_opts(sp)
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("audit", help="replay and revalidate a trace")
    sp.add_argument("trace")
    sp.set_defaults(func=cmd_audit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
