"""Command-line interface.

Braid words are passed inline (``vpb 3: s1,2 s2,1'`` or ``br 4: 1 -2 1``);
diagrams are read from files or standard input (``-``).  Exit codes: 0 on
success, 1 on domain errors (cyclic diagram, not a divisor, ...), 2 on usage
or input-syntax errors.  All output is byte-deterministic.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import braid, division, enumeration
from .diagram import parse, serialize
from .errors import OuError, ParseError
from .rewrite import DEFAULT_MAX_ITERS, ou_normal_form

_WORD_HEADER = re.compile(r"^\s*(vpb|br)\s+\d+\s*:")


def _read_diagram_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="ascii") as fh:
        return fh.read()


def _load_tangle(source: str, max_iters: int):
    """A reduced OU tangle from an inline word or a diagram file/stdin."""
    m = _WORD_HEADER.match(source)
    if m and m.group(1) == "vpb":
        return braid.ch(braid.parse_vpb(source), max_iters)
    if m:
        word, _ = braid.classical_to_vpb(braid.parse_classical(source))
        return braid.ch(word, max_iters)
    return parse(_read_diagram_text(source))


def _parse_any_word(text: str):
    m = _WORD_HEADER.match(text)
    if m and m.group(1) == "vpb":
        word = braid.parse_vpb(text)
        return word, tuple(range(1, word.n + 1))
    if m:
        return braid.classical_to_vpb(braid.parse_classical(text))
    raise ParseError("expected a word starting with 'vpb <n>:' or 'br <n>:'")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outangles",
        description="Over-then-under normal forms of virtual tangles and braids.",
    )
    parser.add_argument(
        "--max-iters",
        type=int,
        default=None,
        help="glide iteration cap (default 16777216; OU_MAX_ITERS overrides the default)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="reduce a diagram to its OU normal form")
    p.add_argument("input", nargs="?", default="-", help="diagram file or - for stdin")

    p = sub.add_parser("ch", help="canonical OU diagram of a braid word")
    p.add_argument("word")

    p = sub.add_parser("eq", help="decide whether two braid words are equal")
    p.add_argument("word1")
    p.add_argument("word2")

    p = sub.add_parser("divisors", help="generators dividing a reduced OU tangle")
    p.add_argument("input", help="inline word or diagram file/-")

    p = sub.add_parser("core", help="peel the maximal braid off a tangle")
    p.add_argument("input", help="inline word or diagram file/-")

    p = sub.add_parser("eg", help="extraction graph of a tangle")
    p.add_argument("input", help="inline word or diagram file/-")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of edge lines")
    p.add_argument("-o", "--output", default=None, help="write to file instead of stdout")

    p = sub.add_parser("tabulate", help="count braids by crossing number")
    p.add_argument("--kind", choices=enumeration.KINDS, required=True)
    p.add_argument("-n", type=int, required=True, dest="n")
    p.add_argument("-m", type=int, required=True, dest="m")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--representatives", default=None, help="write one word per braid here")
    p.add_argument("--max-keys", type=int, default=None, help="abort beyond this many stored braids")

    p = sub.add_parser("worst", help="proud word of length m maximizing the OU crossing number")
    p.add_argument("--kind", choices=enumeration.KINDS, required=True)
    p.add_argument("-n", type=int, required=True, dest="n")
    p.add_argument("-m", type=int, required=True, dest="m")

    p = sub.add_parser("fibcheck", help="check the classical 3-strand count formula")
    p.add_argument("-m", type=int, required=True, dest="m")
    return parser


def _run(args: argparse.Namespace, max_iters: int) -> int:
    if args.command == "normalize":
        d = parse(_read_diagram_text(args.input))
        sys.stdout.write(serialize(ou_normal_form(d, max_iters)))
        return 0

    if args.command == "ch":
        word, _ = _parse_any_word(args.word)
        sys.stdout.write(serialize(braid.ch(word, max_iters)))
        return 0

    if args.command == "eq":
        w1, p1 = _parse_any_word(args.word1)
        w2, p2 = _parse_any_word(args.word2)
        same = braid.braids_equal(w1, w2, max_iters) and p1 == p2
        print("equal" if same else "distinct")
        return 0

    if args.command == "divisors":
        tangle = _load_tangle(args.input, max_iters)
        for g in division.divisors(tangle, max_iters):
            print(g.token())
        return 0

    if args.command == "core":
        tangle = _load_tangle(args.input, max_iters)
        word, core = division.peel(tangle, max_iters=max_iters)
        print(word.text())
        sys.stdout.write(serialize(core))
        return 0

    if args.command == "eg":
        tangle = _load_tangle(args.input, max_iters)
        graph = division.extraction_graph(tangle, max_iters)
        text = division.to_dot(graph) if args.dot else division.to_edge_lines(graph)
        if args.output is None:
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="ascii") as fh:
                fh.write(text)
        return 0

    if args.command == "tabulate":
        report = enumeration.tabulate(
            args.n,
            args.m,
            args.kind,
            workers=args.workers,
            representatives_path=args.representatives,
            max_keys=args.max_keys,
            max_iters=max_iters,
        )
        sys.stdout.write(report.table_text())
        sys.stdout.write(report.structured_lines())
        return 0

    if args.command == "worst":
        word, value = enumeration.worst_braid(args.n, args.m, args.kind, max_iters)
        print(word.text())
        print(f"xi {value}")
        return 0

    if args.command == "fibcheck":
        if enumeration.fibonacci_check(args.m):
            print(f"ok m=1..{args.m}")
            return 0
        print(f"mismatch within m=1..{args.m}")
        return 1

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.max_iters is not None:
        max_iters = args.max_iters
    else:
        max_iters = int(os.environ.get("OU_MAX_ITERS", DEFAULT_MAX_ITERS))
    try:
        return _run(args, max_iters)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
