"""``starpart`` command line: solve, verify, gen, bench.

Exit codes: 0 yes/valid, 1 no/invalid, 2 usage or input error, 3 refused.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .bench import BENCH_CLASSES, bench_rows, parse_sizes
from .generators import (
    KINDS,
    format_x3c,
    parse_tdm,
    parse_x3c,
    random_instance,
    random_x3c,
    tdm_to_chordal,
    x3c_to_split,
)
from .graph import verify_partition
from .oracle import default_budget
from .solve import CLASSES, Refused, load_graph, solve_text

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        formats.write_text(path, text)
    else:
        sys.stdout.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    text = formats.read_text(args.input)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        out = solve_text(
            args.cls,
            args.s,
            text,
            budget=budget,
            trace=args.trace,
            dump_gadget=args.dump_gadget,
            dump_cotree=args.dump_cotree,
        )
    except Refused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    for note in out.notes:
        print(note)
    print("yes" if out.answer else "no")
    if out.answer and args.certificate:
        _emit(formats.format_partition(out.partition), args.certificate)
    return EXIT_YES if out.answer else EXIT_NO


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_graph(formats.read_text(args.input))
    p = formats.parse_partition(formats.read_text(args.partition), args.s)
    report = verify_partition(g, p.s, p)
    if report.valid:
        print("valid")
        return EXIT_YES
    print(f"invalid: {report.reason}")
    return EXIT_NO


def cmd_gen(args: argparse.Namespace) -> int:
    if args.what == "x3c-split":
        if args.input:
            inst = parse_x3c(formats.read_text(args.input))
        else:
            inst = random_x3c(args.u, args.sets, args.s, args.seed)
        g, names = x3c_to_split(inst, args.s)
        header = ["x3c instance:"] + format_x3c(inst).splitlines()
        _emit(formats.format_graph(g, header + [f"{i} {nm}" for i, nm in enumerate(names)]), args.output)
    elif args.what == "tdm-chordal":
        g, names = tdm_to_chordal(parse_tdm(formats.read_text(args.input)))
        _emit(formats.format_graph(g, [f"{i} {nm}" for i, nm in enumerate(names)]), args.output)
    else:
        inst = random_instance(args.kind, args.n, args.seed)
        if inst.intervals is not None:
            text = formats.format_intervals(inst.intervals.intervals)
        elif inst.bipartite is not None:
            order = (list(inst.ordering.u_order), list(inst.ordering.w_order))
            text = formats.format_bipartite(inst.bipartite, order)
        else:
            text = formats.format_graph(inst.graph)
        _emit(text, args.output)
    return EXIT_YES


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench_rows(args.cls, parse_sizes(args.sizes), args.seed, args.s)
    _emit("\n".join(rows) + "\n", args.output)
    return EXIT_YES


def _positive(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return val


def _nonneg(text: str) -> int:
    val = int(text)
    if val < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return val


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="starpart", description="Star partitions on special graph classes.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="decide an instance and optionally write a certificate")
    sp.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    sp.add_argument("--s", type=_positive, required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--certificate", metavar="PATH", help="write the partition here ('-' for stdout)")
    sp.add_argument("--trace", action="store_true", help="print handle-list sizes (interval, s=2)")
    sp.add_argument("--budget", type=_nonneg, help="oracle node-expansion cap (default $STARPART_BUDGET or 1e7)")
    sp.add_argument("--dump-gadget", action="store_true", help="print the matching gadget (split, s=2)")
    sp.add_argument("--dump-cotree", action="store_true", help="print the cotree (cograph)")
    sp.set_defaults(func=cmd_solve)

    vp = sub.add_parser("verify", help="check a partition against a graph")
    vp.add_argument("--input", required=True)
    vp.add_argument("--partition", required=True)
    vp.add_argument("--s", type=_positive, help="star size (default: read from the first block)")
    vp.set_defaults(func=cmd_verify)

    gp = sub.add_parser("gen", help="write generated instances")
    gsub = gp.add_subparsers(dest="what", required=True)
    gx = gsub.add_parser("x3c-split", help="split graph from an exact-cover instance")
    gx.add_argument("--input", help="X3C file; otherwise a random planted instance")
    gx.add_argument("--u", type=_positive, default=3)
    gx.add_argument("--sets", type=_positive, default=1)
    gx.add_argument("--s", type=_positive, default=3)
    gx.add_argument("--seed", type=int, default=0)
    gx.add_argument("--output")
    gt = gsub.add_parser("tdm-chordal", help="chordal graph from a 3-dimensional matching instance")
    gt.add_argument("--input", required=True)
    gt.add_argument("--output")
    gr = gsub.add_parser("random", help="random instance of a class")
    gr.add_argument("--kind", required=True, choices=KINDS)
    gr.add_argument("--n", type=_nonneg, required=True)
    gr.add_argument("--seed", type=int, required=True)
    gr.add_argument("--output")
    gp.set_defaults(func=cmd_gen)

    bp = sub.add_parser("bench", help="time a solver over a size ladder (CSV)")
    bp.add_argument("--class", dest="cls", required=True, choices=BENCH_CLASSES)
    bp.add_argument("--sizes", default="1e3,1e4,1e5")
    bp.add_argument("--seed", type=int, default=1)
    bp.add_argument("--s", type=_positive, default=2)
    bp.add_argument("--output")
    bp.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
