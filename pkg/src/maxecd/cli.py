"""Command line entry point: ``maxecd <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

import numpy as np

from . import bench
from .bnp import DEFAULT_TIME_LIMIT, MasterModel, Pricer, branch_and_bound
from .generate import GenSpec, GenerationError, generate_instance, instance_filename
from .graph import (Decomposition, GraphError, check_decomposition, load_instance, make_cycle,
                    save_instance)
from .greedy import all_fundamental_cycles, all_triangles, greedy_runs
from .heuristic import DEFAULT_K, ilp_heuristic, pool_from_runs
from .oracle import enumerate_cycles, max_decomposition_bruteforce
from .pricing import minimum_weight_cycle_avoiding, price

BENCH_TIME_LIMIT = 60.0


def read_cycles(path, g):
    """One cycle per line as whitespace-separated vertex labels."""
    with open(path, encoding="utf-8") as fh:
        return [make_cycle(g, [int(v) for v in ln.split()]) for ln in fh
                if ln.strip() and not ln.startswith("#")]


def read_weights(path, m):
    w = [0.0] * m
    with open(path, encoding="utf-8") as fh:
        for ln in fh:
            if ln.strip() and not ln.startswith("#"):
                e, val = ln.split()
                w[int(e)] = float(val)
    return w


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    spec = GenSpec(args.n, args.density, args.seed, args.count)
    for i in range(args.count):
        g = generate_instance(spec, i)
        path = os.path.join(out_dir, instance_filename(args.n, args.density, i))
        save_instance(g, path)
        print(path)
    return 0


def cmd_greedy(args) -> int:
    g = load_instance(args.instance, require_eulerian=True)
    runs = greedy_runs(g, args.runs, np.random.default_rng(args.seed))
    sizes = [len(d) for d in runs]
    best = runs[int(np.argmax(sizes))]
    _emit(args, {"counts": sizes, "average": float(np.mean(sizes)), "best_count": len(best),
                 "best": best.to_lists()})
    return 0


def cmd_ilp_h(args) -> int:
    g = load_instance(args.instance, require_eulerian=True)
    dec, rep = ilp_heuristic(g, args.k, np.random.default_rng(args.seed), args.time_limit)
    _emit(args, {"objective": len(dec), "decomposition": dec.to_lists(),
                 "valid": not check_decomposition(g, dec), "report": rep.to_dict()})
    return 0


def cmd_solve(args) -> int:
    g = load_instance(args.instance, require_eulerian=True)
    pool = []
    if args.pool:
        pool += read_cycles(args.pool, g)
    if args.init == "triangles":
        pool += all_triangles(g)
    elif args.init == "fundamental":
        pool += all_fundamental_cycles(g)
    elif args.init == "greedy":
        pool += pool_from_runs(greedy_runs(g, args.k, np.random.default_rng(args.seed)))
    warm = Decomposition(read_cycles(args.warm_start, g)) if args.warm_start else None
    pricer = Pricer(g) if args.mode == "cg" else None
    rep = branch_and_bound(MasterModel(g, pool), pricer, warm, args.time_limit)
    _emit(args, rep.to_dict())
    return 0


def cmd_oracle(args) -> int:
    g = load_instance(args.instance, require_eulerian=True)
    k, dec = max_decomposition_bruteforce(g)
    _emit(args, {"optimum": k, "decomposition": dec.to_lists(), "cycles": len(enumerate_cycles(g))})
    return 0


def cmd_price(args) -> int:
    g = load_instance(args.instance)
    w = read_weights(args.weights, g.m)
    forbidden = read_cycles(args.forbid, g) if args.forbid else []
    found = minimum_weight_cycle_avoiding(g, w, forbidden)
    violated = price(g, w, forbidden)
    _emit(args, {
        "cycle": list(found.cycle.vertices) if found else None,
        "weight": found.weight if found else None,
        "violated": violated is not None,
    })
    return 0


def cmd_check(args) -> int:
    g = load_instance(args.instance)
    dec = Decomposition(read_cycles(args.decomposition, g))
    problems = check_decomposition(g, dec, require_complete=not args.partial)
    _emit(args, {"valid": not problems, "violations": problems})
    return 0 if not problems else 1


def cmd_bench(args) -> int:
    cells = bench.desk_grid(args.seed, args.count, args.sizes, args.densities)
    t = time.perf_counter()
    rows = bench.run_benchmark(cells, args.methods, args.seed, args.time_limit, args.k, args.workers)
    _emit(args, bench.to_csv(rows, timings=not args.no_timings))
    logging.getLogger(__name__).info("benchmark finished in %.1f s", time.perf_counter() - t)
    return 0


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    def add_globals(parser, default):
        parser.add_argument("--seed", type=int, default=0 if default is None else default)
        parser.add_argument("--time-limit", type=float, default=default,
                            help=f"seconds per solve (default {DEFAULT_TIME_LIMIT:g}, bench {BENCH_TIME_LIMIT:g})")
        parser.add_argument("--out", default=default, help="output file (directory for generate)")

    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="maxecd", description="Maximum cycle decomposition of Eulerian graphs")
    p.add_argument("-v", "--verbose", action="store_true")
    add_globals(p, None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common], help="write random Eulerian instances")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--density", type=float, required=True)
    s.add_argument("--count", type=int, default=20)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("greedy", parents=[common], help="repeated GREEDY runs")
    s.add_argument("--instance", required=True)
    s.add_argument("--runs", type=int, default=DEFAULT_K)
    s.set_defaults(func=cmd_greedy)

    s = sub.add_parser("ilp-h", parents=[common], help="ILP-Heuristic")
    s.add_argument("--instance", required=True)
    s.add_argument("--k", type=int, default=DEFAULT_K)
    s.set_defaults(func=cmd_ilp_h)

    s = sub.add_parser("solve", parents=[common], help="branch-and-price or restricted solve")
    s.add_argument("--instance", required=True)
    s.add_argument("--mode", choices=["cg", "restricted"], default="cg")
    s.add_argument("--pool", help="initial columns, one cycle per line")
    s.add_argument("--init", choices=["none", "triangles", "fundamental", "greedy"], default="none")
    s.add_argument("--k", type=int, default=DEFAULT_K, help="greedy runs for --init greedy")
    s.add_argument("--warm-start", help="initial incumbent, one cycle per line")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", parents=[common], help="brute-force optimum (small graphs)")
    s.add_argument("--instance", required=True)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("price", parents=[common], help="minimum-weight cycle under edge weights")
    s.add_argument("--instance", required=True)
    s.add_argument("--weights", required=True, help="lines of 'edge_index value'")
    s.add_argument("--forbid", help="cycles to avoid, one per line")
    s.set_defaults(func=cmd_price)

    s = sub.add_parser("check", parents=[common], help="validate a decomposition")
    s.add_argument("--instance", required=True)
    s.add_argument("--decomposition", required=True)
    s.add_argument("--partial", action="store_true", help="do not require full edge coverage")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bench", parents=[common], help="run the benchmark grid, write CSV")
    s.add_argument("--sizes", type=int, nargs="+", default=list(bench.DESK_SIZES))
    s.add_argument("--densities", type=float, nargs="+", default=list(bench.DESK_DENSITIES))
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--methods", nargs="+", choices=bench.METHODS, default=["greedy", "ilp_h"])
    s.add_argument("--k", type=int, default=DEFAULT_K)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--no-timings", action="store_true", help="blank the time column for diffable output")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.time_limit is None:
        args.time_limit = BENCH_TIME_LIMIT if args.func is cmd_bench else DEFAULT_TIME_LIMIT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphError, GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
