"""``ermetrics`` command line: eval, perturb, rank-compare, generate.

Exit codes: 0 success, 1 some metric could not be computed (its value is
null in the report), 2 bad input, parse error or universe mismatch.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .errors import ErMetricsError
from .files import FORMATS, parse_clustering_file, write_clustering
from .gmd import CostFamily
from .core import POLICIES
from .rank import rank_compare
from .report import EvalOptions, evaluate, resolve_metrics
from .synth import perturb, random_partition

log = logging.getLogger("ermetrics")

EXIT_OK, EXIT_METRIC, EXIT_INPUT = 0, 1, 2


def _metric_list(text: str):
    names = [t.strip() for t in text.split(",") if t.strip()]
    return resolve_metrics(names)


def _mix(text: str) -> dict:
    mix = {}
    for part in text.split(","):
        op, _, weight = part.partition(":")
        mix[op.strip()] = float(weight) if weight else 1.0
    return mix


def _options(args, metrics) -> EvalOptions:
    return EvalOptions(
        metrics=metrics,
        universe=args.universe,
        beta=args.beta,
        gmd_split=CostFamily.parse(args.gmd_split),
        gmd_merge=CostFamily.parse(args.gmd_merge),
    )


def cmd_eval(args) -> int:
    pred = parse_clustering_file(args.pred, args.format)
    gold = parse_clustering_file(args.gold, args.format)
    report = evaluate(pred, gold, _options(args, args.metrics))
    sys.stdout.write(report.render(args.out))
    return EXIT_METRIC if report.failed else EXIT_OK


def cmd_perturb(args) -> int:
    source = parse_clustering_file(args.infile, args.format)
    result, plog = perturb(source, args.ops, args.mix, seed=args.seed)
    write_clustering(result, args.out, None if args.format == "auto" else args.format)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            json.dump(plog.to_dict(), fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    log.info("applied %d ops; %d -> %d clusters", len(plog.ops), len(source), len(result))
    return EXIT_OK


def cmd_rank_compare(args) -> int:
    gold = parse_clustering_file(args.gold, args.format)
    candidates = [parse_clustering_file(p, args.format) for p in args.candidates]
    names = [os.path.basename(p) for p in args.candidates]
    if len(set(names)) != len(names):
        names = list(args.candidates)
    result = rank_compare(gold, candidates, args.metrics, _options(args, None), names=names,
                          workers=args.workers)
    if args.out == "json":
        sys.stdout.write(json.dumps(result.to_dict(), indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(result.to_table())
    return EXIT_OK


def cmd_generate(args) -> int:
    c = random_partition(args.n, args.profile, args.seed)
    write_clustering(c, args.out, None if args.format == "auto" else args.format)
    return EXIT_OK


def _add_eval_knobs(p):
    p.add_argument("--universe", choices=POLICIES, default="strict")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gmd-split", default="product:1", metavar="SPEC",
                   help="constant:k | product:k | affine:k1,k2 | vi")
    p.add_argument("--gmd-merge", default="product:1", metavar="SPEC")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ermetrics",
                                     description="Score entity-resolution clusterings against a gold standard.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt_choices = ("auto", *FORMATS)

    p = sub.add_parser("eval", help="score one predicted clustering")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--format", choices=fmt_choices, default="auto")
    p.add_argument("--metrics", type=_metric_list, default=None, help="comma list or 'all'")
    _add_eval_knobs(p)
    p.add_argument("--out", choices=("json", "csv", "table"), default="json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("perturb", help="apply seeded random splits/merges/moves")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--ops", type=int, required=True)
    p.add_argument("--mix", type=_mix, default={"split": 1, "merge": 1, "move": 1},
                   help="e.g. split:1,merge:1,move:0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=fmt_choices, default="auto")
    p.add_argument("--out", required=True)
    p.add_argument("--log")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("rank-compare", help="check whether metrics agree on a ranking")
    p.add_argument("--gold", required=True)
    p.add_argument("--candidates", nargs="+", required=True)
    p.add_argument("--metrics", type=_metric_list, default=None)
    p.add_argument("--format", choices=fmt_choices, default="auto")
    _add_eval_knobs(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_rank_compare)

    p = sub.add_parser("generate", help="write a random partition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", default="uniform:3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=fmt_choices, default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ErMetricsError, ValueError, OSError) as exc:
        print(f"ermetrics: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
