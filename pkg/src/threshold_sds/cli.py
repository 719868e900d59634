"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size or budget cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .closed_form import Family, FamilyKind, extremal_order_circle, extremal_order_line
from .engine import CapExceededError, ThresholdSds, bitstring, validate_order
from .graphs import BaseGraph, GraphError, read_edge_list
from .phase_space import DEFAULT_CAP, build, components, fixed_points, goe_states, to_dot
from .verify import DEFAULT_SEED, SCAN_BUDGET, SUITES, run_suites, scan_orders

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def parse_order(text: str, n: int, family: FamilyKind | None, k: int) -> tuple[int, ...]:
    """Resolve ``identity``, ``random:<seed>``, ``extremal`` or ``3,1,0,2``."""
    text = text.strip()
    if text == "identity":
        return tuple(range(n))
    if text.startswith("random"):
        _, _, seed = text.partition(":")
        try:
            rng = np.random.default_rng(int(seed) if seed else None)
        except ValueError:
            raise UsageError(f"bad random seed in order string {text!r}") from None
        return tuple(int(v) for v in rng.permutation(n))
    if text == "extremal":
        if family is not None and family.family is Family.CIRCLE:
            return extremal_order_circle(family.n, 0)
        if family is not None and family.family is Family.LINE and k in (1, 3):
            return extremal_order_line(family.n, k)[0]
        raise UsageError("extremal orders exist for circ (k=1,3) and line (k=1,3) only")
    try:
        return validate_order([int(v) for v in text.split(",")], n)
    except ValueError as e:
        raise UsageError(f"bad order {text!r}: {e}") from None


def _order_seed(text: str) -> int | None:
    seed = text.partition(":")[2] if text.startswith("random") else ""
    return int(seed) if seed.lstrip("-").isdigit() else None


def _load_graph(args) -> tuple[BaseGraph, FamilyKind | None]:
    if args.graph_file:
        return read_edge_list(args.graph_file), None
    if args.family is None or args.n is None:
        raise UsageError("give --family and --n, or --graph-file")
    try:
        fam = FamilyKind(Family.parse(args.family), args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return fam.graph(), fam


def cmd_build(args) -> int:
    graph, fam = _load_graph(args)
    order = parse_order(args.order, graph.n_vertices, fam, args.k)
    sds = ThresholdSds(graph, args.k, order)
    t0 = time.perf_counter()
    ps = build(sds, cap=args.cap)
    t1 = time.perf_counter()
    comps = components(ps)
    goes = goe_states(ps)
    t2 = time.perf_counter()
    n = ps.n
    report = {
        "version": __version__,
        "config": {
            "command": "build",
            "graph": graph.name,
            "family": fam.family.value if fam else None,
            "n": fam.n if fam else graph.n_vertices,
            "n_vertices": n,
            "k": args.k,
            "order": list(order),
            "order_spec": args.order,
            "cap": args.cap,
            "seed": _order_seed(args.order),
        },
        "components": [
            {
                "size": c.member_count,
                "depth": c.depth,
                "shape": c.shape.value,
                "cycle_states": [bitstring(s, n) for s in c.cycle],
                "goe_count": c.goe_count,
            }
            for c in comps
        ],
        "fixed_points": [bitstring(s, n) for s in fixed_points(ps)],
        "goe_count": len(goes),
        "timings": {"build_s": t1 - t0, "analysis_s": t2 - t1},
    }
    if sds.out_of_regime:
        print(f"warning: k={args.k} is outside 1..max_degree+1; dynamics collapse in one step", file=sys.stderr)
    print(f"{graph.name}, k={args.k}, order={','.join(map(str, order))}: {1 << n} states")
    print(f"{len(comps)} components")
    for c in comps:
        cyc = ",".join(bitstring(s, n) for s in c.cycle)
        print(f"  root {cyc}: size {c.member_count}, depth {c.depth}, {c.shape.value}, GOE {c.goe_count}")
    print(f"fixed points: {len(report['fixed_points'])}; GOE states: {len(goes)}")
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2) + "\n")
    if args.dot:
        Path(args.dot).write_text(to_dot(ps, name=graph.name))
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = [s for part in args.suite for s in part.split(",") if s]
    for s in suites:
        if s not in SUITES + ("all", "circ"):
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)} or all")
    report = run_suites(suites, args.nmax, args.orders, args.seed, nmin=args.nmin)
    if report.table:
        print(report.table)
        print()
    for note in report.notes:
        print(f"note: {note}")
    for c in report.failures:
        print(f"FAIL {c.params} {c.claim}: predicted {c.predicted}, measured {c.measured}, counterexample {c.counterexample}")
    print(report.summary())
    if args.json:
        payload = {
            "version": __version__,
            "config": {
                "command": "verify",
                "suites": suites,
                "nmin": args.nmin,
                "nmax": args.nmax,
                "orders": args.orders,
                "seed": args.seed,
            },
            "report": report.to_dict(),
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_scan_orders(args) -> int:
    try:
        fam = FamilyKind(Family.parse(args.family), args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    res = scan_orders(fam, args.k, budget=args.budget)
    print(f"{fam}, k={args.k}: scanned {res.orders_scanned} orders")
    print(f"max depth {res.max_depth}")
    print(f"witness order {','.join(map(str, res.witness))}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="threshold-sds", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build one phase space and summarise it")
    b.add_argument("--family", help="complete, star, circ or line")
    b.add_argument("--n", type=int, help="vertices (arms for star)")
    b.add_argument("--graph-file", help="edge-list file instead of a family")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--order", default="identity", help="identity | random:<seed> | extremal | comma list")
    b.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max vertices for a full build")
    b.add_argument("--json", help="write the JSON report here")
    b.add_argument("--dot", help="write GraphViz source here")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", action="append", default=[], help=f"{', '.join(SUITES)} or all; repeatable")
    v.add_argument("--nmin", type=int, default=1)
    v.add_argument("--nmax", type=int, default=8)
    v.add_argument("--orders", type=int, default=5, help="random orders per case, on top of identity")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--json", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan-orders", help="maximum depth over every update order")
    s.add_argument("--family", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget", type=int, default=SCAN_BUDGET, help="max vertices for the n! scan")
    s.set_defaults(func=cmd_scan_orders)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", None) == []:
        args.suite = ["all"]
    try:
        if getattr(args, "cap", 1) < 1 or getattr(args, "budget", 1) < 1:
            raise UsageError("caps must be positive")
        return args.func(args)
    except (UsageError, GraphError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
