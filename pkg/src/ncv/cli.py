"""Command line entry point.

    ncv analyze <graph> [--matching auto|kind-K|u-v,u-v,...] [--dim]
    ncv reproduce <id>
    ncv conjecture <file.g6>
    ncv formulas <K<n>|K<p>,<q>>

Exit codes: 0 ok, 1 mismatch or counterexample, 2 usage, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys

from ncv.config import BudgetExceeded, Budgets, RunConfig
from ncv.graph import GraphError
from ncv.report import (
    EXIT_BUDGET,
    EXIT_USAGE,
    REPRODUCIBLE,
    cmd_analyze,
    cmd_conjecture,
    cmd_formulas,
    cmd_reproduce,
)

log = logging.getLogger("ncv")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cache-dir", default=None, help="directory for cached cycle catalogs")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    defaults = Budgets()
    common.add_argument("--budget-n", type=int, default=defaults.max_n)
    common.add_argument("--budget-edges", type=int, default=defaults.max_edges)
    common.add_argument("--budget-cycles", type=int, default=defaults.max_cycles)
    common.add_argument("--budget-classes", type=int, default=defaults.max_class_bits,
                        help="max log2 of the number of switching classes")
    common.add_argument("--budget-subset", type=int, default=defaults.max_subset)
    common.add_argument("--budget-automorphisms", type=int, default=defaults.max_automorphisms)

    parser = argparse.ArgumentParser(prog="ncv", description="Negative cycle vectors of signed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full pipeline for one graph")
    p.add_argument("graph", help="e.g. K5, K3,4, petersen, prism4, g6:Dhc")
    p.add_argument("--matching", default="auto", help="auto, kind-K, or an edge list like 0-1,2-3")
    p.add_argument("--dim", action="store_true", help="compute dim NCV even when it is expensive")

    p = sub.add_parser("reproduce", parents=[common], help="recompute a published table")
    p.add_argument("id", choices=REPRODUCIBLE)

    p = sub.add_parser("conjecture", parents=[common], help="check dim NCV = |Spec| over a graph6 corpus")
    p.add_argument("corpus")

    p = sub.add_parser("formulas", parents=[common], help="closed forms vs enumeration")
    p.add_argument("family", help="K<n> or K<p>,<q>")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = RunConfig(
            budgets=Budgets(
                max_n=args.budget_n,
                max_edges=args.budget_edges,
                max_cycles=args.budget_cycles,
                max_class_bits=args.budget_classes,
                max_subset=args.budget_subset,
                max_automorphisms=args.budget_automorphisms,
            ),
            workers=args.workers,
            output_format=args.format,
            cache_dir=args.cache_dir,
            timing=args.timing,
        )
        if args.command == "analyze":
            report = cmd_analyze(args.graph, args.matching, args.dim, config)
        elif args.command == "reproduce":
            report = cmd_reproduce(args.id, config)
        elif args.command == "conjecture":
            report = cmd_conjecture(args.corpus, config)
        else:
            report = cmd_formulas(args.family, config)
    except BudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except (GraphError, ValueError, KeyError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    print(report.render(config.output_format, config.timing))
    if config.timing:
        print(f"wall time {report.wall_time:.3f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
