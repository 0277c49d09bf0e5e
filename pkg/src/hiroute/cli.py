"""Command line interface: preprocess, query, gen, report."""

from __future__ import annotations

import argparse
import sys

from . import fileio
from .ch import build_ch, dump_ch
from .fileio import ParseError
from .harness import (
    ExperimentPlan,
    generate_synthetic_instance,
    load_instance,
    run_experiment,
    write_instance,
)
from .scenarios import SCENARIO_NAMES, ContractViolationError
from .astar import InfeasibleHeuristicError
from .verify import VerificationError

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONTRACT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiroute",
        description="Road-network route planning benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="build and store a hierarchy")
    p.add_argument("graph", help="DIMACS .gr file")
    p.add_argument("--out", default="ch.bin", help="hierarchy dump path")

    q = sub.add_parser("query", help="run a benchmark query workload")
    q.add_argument("instance", help="instance directory or .gr file")
    q.add_argument("--scenario", default="base", choices=SCENARIO_NAMES)
    q.add_argument("--alpha", default=None, help="weight scale factor (scaled)")
    q.add_argument(
        "--avoid", default="", help="comma list from {t,h}: tunnels, highways"
    )
    q.add_argument("--turns", default=None, help="turn table file override")
    q.add_argument("--ttf", default=None, help="travel time function file override")
    q.add_argument("--live", default=None, help="live snapshot file override")
    q.add_argument("--tau-soon", type=int, default=3_600_000)
    q.add_argument(
        "--algo",
        default="chpot",
        help="comma list from {zero,alt,chpot,oracle}",
    )
    q.add_argument("--no-bcc", action="store_true")
    q.add_argument("--no-deg2", action="store_true")
    q.add_argument("--no-deg3", action="store_true")
    q.add_argument("--queries", type=int, default=10_000)
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--csv", default=None, help="write per-query records here")
    q.add_argument(
        "--verify",
        action="store_true",
        help="check every distance against a reference search",
    )

    g = sub.add_parser("gen", help="generate a synthetic instance")
    g.add_argument("--kind", default="grid", choices=["grid", "random-geometric"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--td", action="store_true", help="emit travel time functions")
    g.add_argument("--live", action="store_true", help="emit a live snapshot")
    g.add_argument("--out", required=True, help="output directory")

    r = sub.add_parser("report", help="render figures and a summary from a CSV")
    r.add_argument("--csv", required=True, help="per-query records")
    r.add_argument("--out-dir", required=True)
    return parser


def _cmd_preprocess(args) -> int:
    with open(args.graph) as f:
        g = fileio.read_dimacs_gr(f)
    ch = build_ch(g)
    with open(args.out, "wb") as f:
        dump_ch(ch, f)
    print(f"hierarchy over {g.n} nodes written to {args.out}")
    return EXIT_OK


def _cmd_query(args) -> int:
    bundle = load_instance(args.instance)
    if args.turns:
        with open(args.turns) as f:
            bundle.turn_table = fileio.read_turns_file(f, bundle.graph)
    if args.ttf:
        with open(args.ttf) as f:
            bundle.ttf_table = fileio.read_ttf_file(f, bundle.graph)
    if args.live:
        with open(args.live) as f:
            bundle.live_table = fileio.read_live_file(f, bundle.graph)
    avoid = {part for part in args.avoid.split(",") if part}
    if avoid - {"t", "h"}:
        raise ValueError(f"unknown avoidance flags: {sorted(avoid - {'t', 'h'})}")
    plan = ExperimentPlan(
        scenario=args.scenario,
        algorithms=tuple(args.algo.split(",")),
        alpha=args.alpha,
        avoid_tunnels="t" in avoid,
        avoid_highways="h" in avoid,
        tau_soon=args.tau_soon,
        bcc=not args.no_bcc,
        deg2=not args.no_deg2,
        deg3=not args.no_deg3 and not args.no_deg2,
        query_count=args.queries,
        seed=args.seed,
        verify=args.verify,
    )
    result = run_experiment(bundle, plan)
    if args.csv:
        with open(args.csv, "w") as f:
            fileio.write_results_csv(result.records, f)
    for algo, stats in sorted(result.summary.items()):
        line = (
            f"{args.scenario:>14} {algo:>7}: "
            f"time {stats['mean_running_time_ns'] / 1e6:9.3f} ms  "
            f"pushes {stats['mean_queue_pushes']:10.1f}  "
            f"length incr. {stats['mean_length_increase'] * 100:6.2f}%"
        )
        if "speedup" in stats:
            line += f"  speedup {stats['speedup']:8.1f}"
        print(line)
    return EXIT_OK


def _cmd_gen(args) -> int:
    bundle = generate_synthetic_instance(
        args.kind, args.n, args.seed, td=args.td, live=args.live
    )
    write_instance(bundle, args.out)
    print(
        f"{args.kind} instance with {bundle.graph.n} nodes / "
        f"{bundle.graph.m} edges written to {args.out}"
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    from .report import render_report

    for path in render_report(args.csv, args.out_dir):
        print(f"wrote {path}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "preprocess": _cmd_preprocess,
        "query": _cmd_query,
        "gen": _cmd_gen,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except (ContractViolationError, InfeasibleHeuristicError, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
