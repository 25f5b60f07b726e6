"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 a budget or timeout cut at least one
query short.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .bench import ALGORITHMS, BenchConfig
from .exact import Query
from .graph import GraphFormatError, dump_dimacs_co, dump_dimacs_gr, gen_grid, read_graph
from .kernels import BACKEND
from .shortest import DEFAULT_KSP_BUDGET
from .subsets import DEFAULT_SUBSET_BUDGET

EXIT_OK, EXIT_INPUT, EXIT_TRUNCATED = 0, 2, 3


class InputError(Exception):
    pass


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph file")
    p.add_argument("--format", choices=["dimacs", "edgelist"], default="dimacs")
    p.add_argument("--coords", help="DIMACS .co coordinate file")


def _solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--ksp-budget", type=int, default=DEFAULT_KSP_BUDGET)
    p.add_argument("--subset-budget", type=int, default=DEFAULT_SUBSET_BUDGET)
    p.add_argument("--timeout-ms", type=float, default=None)


def _pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--source", "-s", type=int, required=True)
    p.add_argument("--target", "-t", type=int, required=True)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="ssvpd-plus")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kdpaths", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"kdpaths 0.1.0 ({BACKEND} kernels)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("query", help="solve one s-t query and print a JSON report")
    _graph_args(q)
    _pair_args(q)
    _solver_args(q)

    b = sub.add_parser("bench", help="run a query batch and print per-query rows")
    _graph_args(b)
    _solver_args(b)
    b.add_argument("--algo", action="append", choices=sorted(ALGORITHMS),
                   help="algorithm to run (repeatable; default ssvpd-plus)")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--queries", help="file with one 's t' pair per line")
    src.add_argument("--random", type=int, metavar="N", help="draw N random connected pairs")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", choices=["json", "csv"], default="csv")
    b.add_argument("--summary", action="store_true", help="print aggregates to stderr")
    b.add_argument("--threads", type=int, default=1)

    gg = sub.add_parser("gen-grid", help="write a seeded synthetic grid as DIMACS")
    gg.add_argument("--rows", type=int, required=True)
    gg.add_argument("--cols", type=int, required=True)
    gg.add_argument("--seed", type=int, default=0)
    gg.add_argument("--output", "-o", required=True, help=".gr output path")
    gg.add_argument("--coords-output", help="optional .co output path")

    ex = sub.add_parser("export", help="solve one query and write GeoJSON")
    _graph_args(ex)
    _pair_args(ex)
    _solver_args(ex)
    ex.add_argument("--output", "-o", default="-", help="GeoJSON path ('-' = stdout)")
    return ap


def _load(args):
    try:
        return read_graph(args.graph, args.format, args.coords)
    except (OSError, GraphFormatError, ValueError) as exc:
        raise InputError(f"cannot load graph: {exc}") from exc


def _config(args, algorithms, **extra) -> BenchConfig:
    try:
        return BenchConfig(
            algorithms=algorithms, k=args.k, theta=args.theta,
            ksp_budget=args.ksp_budget, subset_budget=args.subset_budget,
            timeout_ms=args.timeout_ms, **extra,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _query(args, g, cfg) -> Query:
    try:
        q = Query(args.source, args.target, cfg.k, cfg.theta)
        q.check(g)
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from exc
    return q


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def cmd_query(args) -> int:
    g = _load(args)
    cfg = _config(args, [args.algo])
    q = _query(args, g, cfg)
    rep = bench.run_single(g, args.algo, q, cfg.options)
    print(json.dumps(rep, indent=2))
    return EXIT_OK if rep["proven_optimal"] else EXIT_TRUNCATED


def cmd_bench(args) -> int:
    g = _load(args)
    extra = {"seed": args.seed, "threads": args.threads}
    if args.queries:
        try:
            with open(args.queries, "rb") as fh:
                extra["queries"] = bench.read_query_file(fh)
        except (OSError, GraphFormatError) as exc:
            raise InputError(f"cannot read queries: {exc}") from exc
    else:
        extra["random_count"] = args.random
    cfg = _config(args, args.algo or ["ssvpd-plus"], **extra)
    try:
        metrics = bench.run_batch(g, cfg)
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from exc
    if args.out == "csv":
        sys.stdout.write(bench.rows_to_csv(metrics.rows))
    else:
        sys.stdout.write(bench.metrics_to_json(metrics) + "\n")
    if args.summary:
        print(json.dumps(metrics.aggregates, indent=2), file=sys.stderr)
    return EXIT_TRUNCATED if any(not r["proven"] for r in metrics.rows) else EXIT_OK


def cmd_gen_grid(args) -> int:
    try:
        g = gen_grid(args.rows, args.cols, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    with open(args.output, "w") as fh:
        dump_dimacs_gr(g, fh)
    if args.coords_output:
        with open(args.coords_output, "w") as fh:
            dump_dimacs_co(g, fh)
    return EXIT_OK


def cmd_export(args) -> int:
    g = _load(args)
    if g.coords is None:
        raise InputError("export needs coordinates (--coords)")
    cfg = _config(args, [args.algo])
    q = _query(args, g, cfg)
    res, _ = bench.run_query(g, args.algo, q, cfg.options)
    _write(args.output, bench.export_geojson(res, g, args.algo))
    return EXIT_OK if res.proven_optimal else EXIT_TRUNCATED


COMMANDS = {"query": cmd_query, "bench": cmd_bench, "gen-grid": cmd_gen_grid, "export": cmd_export}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.cmd](args)
    except InputError as exc:
        print(f"kdpaths: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
