"""Command-line harness: count, list, verify, bench, stats.

Exit codes: 0 success, 1 I/O or parse error, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
import time

import numpy as np

from .engine import (
    ALGORITHMS,
    CollectingSink,
    CountingSink,
    LockedSink,
    RunStats,
    WriterSink,
    canonical_name,
    canonicalize,
    cost_model,
    verify_equivalence,
)
from .graph import Graph, ParseError, load_edge_list
from .oracle import DEFAULT_CAP, brute_force_triangles
from .ordering import OrientedGraph, apply_local_order, make_order, orient
from .parallel import ParallelConfig, run_parallel
from .report import SCHEMA_VERSION, BenchReport, to_csv

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

ALGO_CHOICES = ("cf", "cf-hash", "kclist", "aot")
ALL_ORDERS = ("degree", "degeneracy", "id", "random:1")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument types


def _order_name(text: str) -> str:
    name, _, arg = text.partition(":")
    if name in ("degree", "degeneracy", "id") and not arg:
        return text
    if name == "random":
        try:
            int(arg or "0")
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed in {text!r}") from None
        return text
    raise argparse.ArgumentTypeError(f"unknown order {text!r} (degree, degeneracy, id, random:SEED)")


def _local_order_name(text: str) -> str:
    name, _, arg = text.partition(":")
    if name in ("degree-desc", "rank-asc", "auto") and not arg:
        return text
    if name == "random":
        try:
            int(arg or "0")
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed in {text!r}") from None
        return text
    raise argparse.ArgumentTypeError(f"unknown local order {text!r} (degree-desc, rank-asc, random:SEED)")


def _csv_of(kind):
    def parse(text: str) -> list:
        items = [t.strip() for t in text.split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return [kind(t) for t in items]
    return parse


def _algo_name(text: str) -> str:
    if text not in ALGO_CHOICES:
        raise argparse.ArgumentTypeError(f"unknown algorithm {text!r} (choose from {', '.join(ALGO_CHOICES)})")
    return text


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {value}")
    return value


# ---------------------------------------------------------------------------
# shared plumbing


def default_order(algo: str) -> str:
    return "degeneracy" if canonical_name(algo) == "kclist3" else "degree"


def default_local_order(algo: str) -> str:
    return "degree-desc" if canonical_name(algo) == "aot" else "rank-asc"


def resolve_local_order(algo: str, requested: str | None) -> str:
    local = default_local_order(algo) if requested in (None, "auto") else requested
    if canonical_name(algo) == "cf_merge" and local != "rank-asc":
        raise UsageError(f"--algo cf merges sorted lists and needs --local-order rank-asc, got {local!r}")
    return local


def load_graph(args) -> tuple[Graph, float]:
    start = time.perf_counter()
    graph = load_edge_list(args.input, one_indexed=args.one_indexed, compact=args.compact)
    return graph, time.perf_counter() - start


def prepare(graph: Graph, order: str, local: str) -> tuple[OrientedGraph, dict[str, float]]:
    t0 = time.perf_counter()
    vo = make_order(graph, order)
    t1 = time.perf_counter()
    og = orient(graph, vo)
    if local != "rank-asc":
        og = apply_local_order(og, local)
    t2 = time.perf_counter()
    return og, {"order": t1 - t0, "orient": t2 - t1}


def run_listing(algo: str, og: OrientedGraph, workers: int, chunk: int, sink_factory=CountingSink) -> RunStats:
    if workers == 1:
        return ALGORITHMS[canonical_name(algo)](og, sink_factory())
    return run_parallel(algo, og, ParallelConfig(workers, chunk), sink_factory)


def dataset_name(path: str) -> str:
    base = os.path.basename(path)
    for suffix in (".gz", ".txt", ".edges", ".el"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
    return base or path


def _threads(args) -> int:
    return ParallelConfig.from_env(args.threads).workers


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args, out) -> int:
    algo = args.algo
    order = args.order or default_order(algo)
    local = resolve_local_order(algo, args.local_order)
    workers = _threads(args)
    graph, t_load = load_graph(args)
    og, phases = prepare(graph, order, local)
    stats = run_listing(algo, og, workers, args.chunk)
    report = BenchReport(
        dataset=dataset_name(args.input),
        n=graph.n,
        m=graph.m,
        algorithm=canonical_name(algo),
        order=og.order.name,
        local_order=og.local_order,
        workers=workers,
        stats=stats,
        phases={"load": t_load, **phases, "list": stats.wall_time},
        cost_model=cost_model(og),
        diagnostics=graph.diagnostics.as_dict() if graph.diagnostics else None,
    )
    if args.pretty:
        _print_table([report], out)
    else:
        out.write(json.dumps({"triangles": stats.triangles, **report.as_dict()}, indent=2) + "\n")
    return EXIT_OK


def cmd_list(args, out) -> int:
    algo = args.algo
    order = args.order or default_order(algo)
    local = resolve_local_order(algo, args.local_order)
    workers = _threads(args)
    graph, _ = load_graph(args)
    og, _ = prepare(graph, order, local)
    try:
        target = open(args.out, "w", encoding="utf-8") if args.out else out
    except OSError as exc:
        print(f"trilist: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.sorted:
            sinks: list[CollectingSink] = []

            def factory():
                sinks.append(CollectingSink())
                return sinks[-1]

            run_listing(algo, og, workers, args.chunk, factory)
            rows = canonicalize(np.concatenate([s.triangles() for s in sinks]))
            target.write("".join(f"{a} {b} {c}\n" for a, b, c in rows.tolist()))
        else:
            shared = LockedSink(WriterSink(target)) if workers > 1 else WriterSink(target)
            run_listing(algo, og, workers, args.chunk, lambda: shared)
    finally:
        if target is not out:
            target.close()
    return EXIT_OK


def cmd_verify(args, out) -> int:
    algos = [canonical_name(a) for a in args.algos]
    orders = args.orders
    graph, _ = load_graph(args)
    reference = None
    oracle_note = "used"
    if graph.n <= args.oracle_cap:
        reference = brute_force_triangles(graph, cap=args.oracle_cap)
    else:
        oracle_note = f"skipped (n={graph.n} > cap {args.oracle_cap})"
    reports = []
    for order in orders:
        report = verify_equivalence(graph, algos, order, args.local_order, reference=reference)
        reports.append(report)
    passed = all(r.passed for r in reports)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "passed": passed,
        "n": graph.n,
        "m": graph.m,
        "oracle": oracle_note,
        "oracle_triangles": len(reference) if reference is not None else None,
        "runs": [r.as_dict() for r in reports],
    }
    out.write(json.dumps(summary, indent=2) + "\n")
    if not passed:
        for r in reports:
            for name, check in r.results.items():
                if not check.passed:
                    print(
                        f"MISMATCH {name} order={r.order}: missing={len(check.missing)} "
                        f"extra={len(check.extra)} duplicated={len(check.duplicated)}",
                        file=sys.stderr,
                    )
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bench(args, out) -> int:
    graph, t_load = load_graph(args)
    name = dataset_name(args.input)
    reports = []
    for order in args.orders:
        for algo in args.algos:
            local = resolve_local_order(algo, args.local_order)
            og, phases = prepare(graph, order, local)
            costs = cost_model(og)
            for workers in args.threads_list:
                runs = [run_listing(algo, og, workers, args.chunk) for _ in range(args.repeats)]
                first = runs[0]
                deterministic = all(r.counters() == first.counters() for r in runs)
                stats = RunStats(**{**first.as_dict(), "wall_time": statistics.median(r.wall_time for r in runs)})
                reports.append(BenchReport(
                    dataset=name, n=graph.n, m=graph.m, algorithm=canonical_name(algo),
                    order=og.order.name, local_order=og.local_order, workers=workers,
                    stats=stats, phases={"load": t_load, **phases, "list": stats.wall_time},
                    cost_model=costs, repeats=args.repeats, deterministic=deterministic,
                ))
    if args.pretty:
        _print_table(reports, out)
    elif args.report == "csv":
        out.write(to_csv(reports))
    else:
        out.write(json.dumps([r.as_dict() for r in reports], indent=2) + "\n")
    return EXIT_OK


def cmd_stats(args, out) -> int:
    graph, t_load = load_graph(args)
    og, phases = prepare(graph, args.order, "rank-asc")
    costs = cost_model(og)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "dataset": dataset_name(args.input),
        "n": graph.n,
        "m": graph.m,
        "order": og.order.name,
        "max_out_degree": int(og.out_degree.max()) if og.n else 0,
        "cost_model": costs.as_dict(),
        "phases": {"load": t_load, **phases},
        "diagnostics": graph.diagnostics.as_dict() if graph.diagnostics else None,
    }
    if args.pretty:
        for k, v in costs.as_dict().items():
            out.write(f"{k:>12}  {v}\n")
    else:
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _print_table(reports: list[BenchReport], out) -> None:
    header = f"{'algorithm':<9} {'order':<12} {'local':<12} {'thr':>3} {'triangles':>12} {'probes':>14} {'list s':>9}"
    out.write(header + "\n")
    for r in reports:
        s = r.stats
        out.write(
            f"{r.algorithm:<9} {r.order:<12} {r.local_order:<12} {r.workers:>3} "
            f"{s.triangles:>12} {s.probes:>14} {s.wall_time:>9.4f}\n"
        )


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trilist", description="Orientation-based triangle listing.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log load diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algo=True):
        p.add_argument("input", help="edge-list file (plain or gzip), '-' for stdin")
        p.add_argument("--format", choices=("edgelist",), default="edgelist")
        p.add_argument("--one-indexed", action="store_true", help="input IDs start at 1")
        p.add_argument("--compact", action="store_true", help="relabel IDs 0..n-1 by first appearance")
        if algo:
            p.add_argument("--algo", type=_algo_name, default="aot", help="cf, cf-hash, kclist, aot")
            p.add_argument("--order", type=_order_name, default=None,
                           help="degree, degeneracy, id, random:SEED (default: per algorithm)")
            p.add_argument("--local-order", type=_local_order_name, default=None,
                           help="degree-desc, rank-asc, random:SEED (default: per algorithm)")
            p.add_argument("--threads", type=_positive_int, default=None,
                           help="worker threads (default: $TRILIST_THREADS or 1)")
            p.add_argument("--chunk", type=_positive_int, default=64, help="pivots per scheduling chunk")

    p = sub.add_parser("count", help="count triangles and report run statistics as JSON")
    common(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("list", help="write canonical triangles 'a b c', one per line")
    common(p)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--sorted", action="store_true", help="sort lines lexicographically")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("verify", help="cross-check algorithms and orders against the brute-force oracle")
    common(p, algo=False)
    p.add_argument("--orders", type=_csv_of(_order_name), default=list(ALL_ORDERS))
    p.add_argument("--algos", type=_csv_of(_algo_name), default=list(ALGO_CHOICES))
    p.add_argument("--local-order", type=_local_order_name, default="rank-asc")
    p.add_argument("--oracle-cap", type=_positive_int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the algorithm x order x threads cross-product")
    common(p, algo=False)
    p.add_argument("--algos", type=_csv_of(_algo_name), default=list(ALGO_CHOICES))
    p.add_argument("--orders", type=_csv_of(_order_name), default=["degree"])
    p.add_argument("--local-order", type=_local_order_name, default=None)
    p.add_argument("--threads-list", type=_csv_of(_positive_int), default=[1])
    p.add_argument("--repeats", type=_positive_int, default=3)
    p.add_argument("--chunk", type=_positive_int, default=64)
    p.add_argument("--report", choices=("json", "csv"), default="json")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="print the per-arc cost sums of an orientation")
    common(p, algo=False)
    p.add_argument("--order", type=_order_name, default="degree")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"trilist: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"trilist: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"trilist: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
