"""Command-line interface.

    exhull run --input points.csv --verify 2d --report out.json
    exhull run --generate sphere --n 50 --m 4 --verify oracle
    exhull generate cube --n 500 --m 4 --seed 1 -o cube.csv

Exit status: 0 on success, 1 on input or usage errors, 2 when verification
disagrees with the computed extreme set.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import time
from pathlib import Path


from .core import ExhullError, PointSet, Tolerances
from .datasets import KINDS, generate, ingest, write_csv
from .hull import STRATEGIES, construct_hull
from .oracle import classify_all_bruteforce, hull_2d
from .report import build_report, dumps, render_svg, write_atomic

log = logging.getLogger("exhull")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _configure_logging() -> None:
    level = os.environ.get("EXHULL_LOG", "warn").lower()
    level = {"warn": "warning"}.get(level, level)
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="exhull", description="Exact extreme points of a finite point set.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="compute the extreme points")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="CSV file, one point per row")
    src.add_argument("--generate", choices=KINDS, metavar="KIND", help=f"one of {', '.join(KINDS)}")
    r.add_argument("--n", type=int, help="number of generated points")
    r.add_argument("--m", type=int, help="dimension of generated points")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--init", choices=STRATEGIES, default="simplex")
    r.add_argument("--eps-zero", type=float, default=None, metavar="X")
    r.add_argument("--max-refine", type=int, default=None, metavar="K")
    r.add_argument("--order", choices=("index", "file"), default="index")
    r.add_argument("--order-file", metavar="PATH",
                   help="0-based ids to process first (with --order file)")
    r.add_argument("--verify", choices=("none", "oracle", "2d"), default="none")
    r.add_argument("--report", metavar="PATH.json")
    r.add_argument("--svg", metavar="PATH.svg")
    r.add_argument("--trace", action="store_true", help="record per-iteration distances")
    r.add_argument("--pre-center", action="store_true", help="subtract the centroid first")
    r.add_argument("--no-timing", action="store_true", help="omit wall time from the report")

    g = sub.add_parser("generate", help="write a synthetic point set as CSV")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", metavar="PATH", required=True)
    return p


def _read_order(path) -> list[int]:
    text = Path(path).read_text(encoding="utf-8")
    return [int(tok) for tok in re.split(r"[\s,]+", text.strip()) if tok]


def _load(args) -> tuple[PointSet, str]:
    if args.input:
        return ingest(args.input), str(args.input)
    if args.n is None or args.m is None:
        raise ExhullError("--generate needs --n and --m")
    ps = generate(args.generate, args.n, args.m, args.seed)
    return ps, f"generate:{args.generate}:n={args.n}:m={args.m}:seed={args.seed}"


def cmd_run(args) -> int:
    ps, source = _load(args)
    if args.pre_center:
        ps = PointSet(ps.points - ps.points.mean(axis=0), origin_rows=ps.origin_rows)
    if args.svg and ps.m != 2:
        raise ExhullError("--svg needs two-dimensional points")
    if args.verify == "2d" and ps.m != 2:
        raise ExhullError("--verify 2d needs two-dimensional points")
    order = "index"
    if args.order == "file":
        if not args.order_file:
            raise ExhullError("--order file needs --order-file")
        order = _read_order(args.order_file)

    tol = Tolerances(eps_zero=args.eps_zero, max_refine=args.max_refine).resolve(ps)
    t0 = time.perf_counter()
    result = construct_hull(ps, tol, init_strategy=args.init, order=order,
                            keep_residuals=args.trace)
    wall = time.perf_counter() - t0

    status = EXIT_OK
    verification = {"mode": args.verify}
    if args.verify != "none":
        expected = classify_all_bruteforce(ps, tol) if args.verify == "oracle" else hull_2d(ps)
        diff = sorted(expected ^ result.extreme_ids)
        verification.update(agree=not diff, symmetric_difference=diff)
        if diff:
            status = EXIT_MISMATCH
            print(f"verification mismatch ({args.verify}); symmetric difference "
                  f"(0-based): {diff}", file=sys.stderr)

    config = {
        "init": args.init,
        "order": args.order if args.order == "index" else list(order),
        "pre_center": bool(args.pre_center),
        "trace": bool(args.trace),
    }
    report = build_report(ps, result, source, config, verification,
                          None if args.no_timing else wall, include_trace=args.trace)
    if args.report:
        write_atomic(args.report, dumps(report))
    if args.svg:
        write_atomic(args.svg, render_svg(ps, report))

    labels = " ".join(str(i + 1) for i in result.sorted_ids())
    print(f"n={ps.n} m={ps.m} extreme={len(result.extreme_ids)} "
          f"qp_solves={result.total_qp_solves} time={wall:.3f}s")
    print(f"extreme points (1-based): {labels}")
    return status


def cmd_generate(args) -> int:
    ps = generate(args.kind, args.n, args.m, args.seed)
    write_csv(ps, args.output)
    return EXIT_OK


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        return cmd_generate(args)
    except (ExhullError, OSError, IndexError) as exc:
        print(f"exhull: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
