"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage, parse or guard-rail
error, 3 strategy precondition failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness, oracle
from .core import NcTree, edge, half_delta, validate_sequence
from .errors import (
    FlipForestError,
    InvalidTree,
    MismatchedN,
    PreconditionFailed,
    SequenceError,
    StepInvalid,
    TooLarge,
)
from .formats import (
    ParseError,
    format_sequence,
    format_tree,
    is_sequence_text,
    parse_sequence,
    parse_tree,
    read_sequence,
    read_tree,
)
from .moves import trace_log
from .render import RenderSpec, render_frames, render_tree
from .strategies import STRATEGIES, run_strategy, transform_best

log = logging.getLogger("flipforest")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _same_n(t1: NcTree, t2: NcTree) -> None:
    if t1.n != t2.n:
        raise MismatchedN(t1.n, t2.n)


# --- subcommands ----------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    if args.uniform and args.n > harness.UNIFORM_MAX_N:
        raise UsageError(f"--uniform is limited to n <= {harness.UNIFORM_MAX_N}")
    tree = harness.random_tree(args.n, args.seed, uniform=args.uniform)
    _emit(format_tree(tree), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    t1, t2 = read_tree(args.tree1), read_tree(args.tree2)
    _same_n(t1, t2)
    handler = None
    if args.trace:
        handler = logging.FileHandler(args.trace, mode="w")
        handler.setFormatter(logging.Formatter("%(message)s"))
        trace_log.addHandler(handler)
        trace_log.setLevel(logging.DEBUG)
        # keep trace lines out of the console handler
        trace_log.propagate = False
    try:
        if args.strategy == "auto":
            seq, rows = transform_best(t1, t2)
        else:
            seq = run_strategy(args.strategy, t1, t2)
            rows = [{
                "name": args.strategy,
                "orientation": "forward",
                "applicable": True,
                "length": len(seq),
                "bound": STRATEGIES[args.strategy].bound(t1, t2),
                "valid": True,
            }]
    finally:
        if handler is not None:
            trace_log.removeHandler(handler)
            trace_log.propagate = True
            handler.close()
    # never write a sequence that does not replay
    validate_sequence(seq, t2)
    _emit(format_sequence(seq), args.out)
    report = {
        "n": t1.n,
        "strategy": args.strategy,
        "length": len(seq),
        "half_delta": half_delta(t1, t2),
        "candidates": rows,
    }
    text = json.dumps(report, indent=1) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    if args.out not in (None, "-"):
        print(f"{len(seq)} flips written to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    seq = read_sequence(args.sequence)
    end = read_tree(args.end) if args.end else None
    if end is not None:
        _same_n(seq.start, end)
    try:
        length = validate_sequence(seq, end)
    except StepInvalid as exc:
        # steps are numbered from 1, like render frames
        print(f"invalid step {exc.index + 1}: {exc.reason}")
        return EXIT_VERIFY
    except SequenceError as exc:
        print(f"invalid: {exc}")
        return EXIT_VERIFY
    print(length)
    return EXIT_OK


def cmd_distance(args) -> int:
    t1, t2 = read_tree(args.tree1), read_tree(args.tree2)
    _same_n(t1, t2)
    print(oracle.exact_distance(t1, t2))
    return EXIT_OK


def cmd_diameter(args) -> int:
    d, (t1, t2) = oracle.diameter(args.n)
    print(d)
    if args.witness:
        sys.stdout.write(format_tree(t1))
        sys.stdout.write(format_tree(t2))
    return EXIT_OK


def cmd_probe(args) -> int:
    print(json.dumps(harness.conjecture_probe(args.n), indent=1))
    return EXIT_OK


def cmd_audit(args) -> int:
    for n in args.n:
        if n < 2:
            raise UsageError("every n must be at least 2")
        if n <= harness.EXHAUSTIVE_MAX_N:
            oracle._guard(n)
    rows = harness.audit(args.n, args.samples, args.seed, exact_max_n=args.exact_max_n)
    if args.csv:
        Path(args.csv).write_text(harness.rows_to_csv(rows))
    if args.json:
        Path(args.json).write_text(harness.rows_to_json(rows))
    if not args.csv and not args.json:
        sys.stdout.write(harness.rows_to_csv(rows))
    bad = harness.violations(rows)
    print(f"{len(rows)} pairs audited, {len(bad)} with violations", file=sys.stderr)
    return EXIT_VERIFY if bad else EXIT_OK


def _parse_highlight(text: str | None) -> frozenset:
    if not text:
        return frozenset()
    out = set()
    for tok in text.split(","):
        try:
            a, b = (int(x) for x in tok.split("-"))
        except ValueError:
            raise UsageError(f"bad highlight edge {tok!r}, expected i-j") from None
        out.add(edge(a, b))
    return frozenset(out)


def cmd_render(args) -> int:
    spec = RenderSpec(
        size=args.size,
        radius=args.radius,
        labels=not args.no_labels,
        highlight=_parse_highlight(args.highlight),
    )
    text = Path(args.input).read_text()
    out = Path(args.out)
    if not is_sequence_text(text):
        out.write_text(render_tree(parse_tree(text), spec))
        return EXIT_OK
    frames = render_frames(parse_sequence(text), spec)
    if args.frame is not None:
        if not 0 <= args.frame < len(frames):
            raise UsageError(f"frame {args.frame} out of range 0..{len(frames) - 1}")
        out.write_text(frames[args.frame])
        return EXIT_OK
    width = len(str(len(frames) - 1))
    for k, svg in enumerate(frames):
        out.with_name(f"{out.stem}-{k:0{width}d}{out.suffix or '.svg'}").write_text(svg)
    print(f"{len(frames)} frames written", file=sys.stderr)
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="flipforest",
        description="Flip sequences between non-crossing spanning trees on convex point sets.",
    )
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random tree")
    g.add_argument("n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--uniform", action="store_true", help="uniform over all trees (n <= 8)")
    g.add_argument("-o", "--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("transform", help="flip sequence from tree1 to tree2")
    t.add_argument("tree1")
    t.add_argument("tree2")
    t.add_argument("--strategy", choices=["auto", *STRATEGIES], default="auto")
    t.add_argument("-o", "--out", help="sequence file (default stdout)")
    t.add_argument("--report", help="JSON report path")
    t.add_argument("--trace", help="write good-flip chain traces as JSON lines")
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", help="replay and check a sequence file")
    v.add_argument("sequence")
    v.add_argument("--end", help="tree the sequence must end at")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("distance", help="exact flip distance (small n)")
    d.add_argument("tree1")
    d.add_argument("tree2")
    d.set_defaults(func=cmd_distance)

    dm = sub.add_parser("diameter", help="flip graph diameter (small n)")
    dm.add_argument("n", type=int)
    dm.add_argument("--witness", action="store_true", help="also print an extremal pair")
    dm.set_defaults(func=cmd_diameter)

    pr = sub.add_parser("probe", help="diameter against 3n/2 as JSON")
    pr.add_argument("n", type=int)
    pr.set_defaults(func=cmd_probe)

    a = sub.add_parser("audit", help="check every strategy against its bound")
    a.add_argument("--n", type=int, nargs="+", required=True)
    a.add_argument("--samples", type=int, default=100, help="random pairs per n above 6")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--exact-max-n", type=int, default=7, help="largest n given exact distances")
    a.add_argument("--csv")
    a.add_argument("--json")
    a.set_defaults(func=cmd_audit)

    r = sub.add_parser("render", help="SVG of a tree, or one frame per step of a sequence")
    r.add_argument("input")
    r.add_argument("--out", required=True)
    r.add_argument("--frame", type=int, help="only this frame (0 is the start tree)")
    r.add_argument("--size", type=int, default=320)
    r.add_argument("--radius", type=float, default=6.0)
    r.add_argument("--no-labels", action="store_true")
    r.add_argument("--highlight", help="comma separated edges, e.g. 1-3,2-5")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PreconditionFailed as exc:
        print(f"precondition failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, ParseError, InvalidTree, MismatchedN, TooLarge, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FlipForestError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
