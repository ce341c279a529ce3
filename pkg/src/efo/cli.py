"""Command line surface.

Exit codes are uniform: 0 for success or a true verdict, 1 for a false or
failing verdict, 2 for usage and input errors.  The EFO_BUDGET environment
variable overrides the default search guards.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import service as game_service
from .catalogue import to_csv_bytes, to_json_bytes, write_csv, write_json
from .display import character_text, characters_report
from .engine import TypeContext, characters, equiv, game_oracle
from .errors import BudgetError, InfeasibleError, ParseError
from .orders import Palette, parse, read_orders
from .threeequiv import (
    LEN70,
    LEN74,
    PALINDROME15,
    debruijn,
    lmr_split3,
    verify74,
    verify_distinct_characters,
    verify_optimal3_bruteforce,
    window_digraph,
)
from .twoequiv import canon2, enumerate2, feasible, merge_patterns

def cmd_equiv(args) -> int:
    palette = Palette.default(args.colours)
    a = parse(args.a, palette)
    b = parse(args.b, palette)
    verdict = equiv(a, b, args.moves)
    print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_oracle(args) -> int:
    palette = Palette.default(args.colours)
    a = parse(args.a, palette)
    b = parse(args.b, palette)
    print(game_oracle(a, b, args.moves, budget=args.budget))
    return 0


def _inputs(args) -> list:
    palette = Palette.default(args.colours)
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return read_orders(fh.readlines(), palette)
    if args.order is None:
        raise ParseError("no order given")
    return [parse(args.order, palette)]


def cmd_canon(args) -> int:
    for order in _inputs(args):
        print(canon2(order).text())
    return 0


def cmd_chars(args) -> int:
    ctx = TypeContext()
    for order in _inputs(args):
        if args.json:
            print(json.dumps(characters_report(order, args.moves, ctx), indent=2))
        else:
            for i, ch in enumerate(characters(order, args.moves, ctx)):
                print(f"{i + 1:3d} {ch.colour.glyph} {character_text(ch, order.palette, ctx)}")
    return 0


def cmd_enumerate(args) -> int:
    cat = enumerate2(args.colours, args.budget)
    both = sum(
        1 for r in cat.records if len(set(r.representative.ids)) == args.colours
    )
    print(
        f"classes: {len(cat.records)} total, {both} using all {args.colours} colours, "
        f"max representative length {cat.max_length}, complete: {cat.complete}"
    )
    if args.json:
        write_json(cat, args.json)
        print(f"wrote {args.json}")
    if args.csv:
        write_csv(cat, args.csv)
        print(f"wrote {args.csv}")
    if not args.json and not args.csv and args.dump:
        sys.stdout.write(to_json_bytes(cat).decode())
    return 0


def cmd_debruijn(args) -> int:
    order = debruijn(args.colours, args.window, budget=args.budget)
    print(order.text())
    return 0


def cmd_digraph(args) -> int:
    order = parse(args.order, Palette.default(args.colours))
    lo = (args.region[0] - 1) if args.region else 0
    hi = args.region[1] if args.region else len(order)
    digraph = window_digraph(order, lo, hi, width=args.window)
    if args.collapsed:
        digraph = digraph.collapsed()
    dot = digraph.to_dot()
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(dot)
        print(f"wrote {args.dot}")
    else:
        sys.stdout.write(dot)
    return 0


def _verdict(label: str, ok: bool) -> bool:
    print(f"{label}: {'PASS' if ok else 'FAIL'}")
    return ok


def _verify_len70(ctx) -> bool:
    ok = True
    report = verify_distinct_characters(LEN70, 2, ctx)
    ok &= _verdict("70 distinct 2-characters", report.all_distinct)
    split = lmr_split3(LEN70, ctx)
    ok &= _verdict(
        "L/M/R widths (19, 32, 19)", (len(split.l), len(split.m), len(split.r)) == (19, 32, 19)
    )
    ok &= _verdict("window coincidence a18..a21 = a50..a53", LEN70.ids[17:21] == LEN70.ids[49:53])
    return ok


def _verify_palindrome15(ctx) -> bool:
    ok = True
    report = verify_distinct_characters(PALINDROME15, 2, ctx)
    ok &= _verdict("single repeated 2-character at (7, 9)", report.repeats == ((7, 9),))
    ok &= _verdict("palindrome", PALINDROME15.reverse() == PALINDROME15)
    ok &= _verdict(
        "no shorter 3-equivalent string (exhaustive)", verify_optimal3_bruteforce(PALINDROME15)
    )
    return ok


def _verify_len74(ctx, as_json: bool = False) -> bool:
    cert = verify74(LEN74, ctx)
    if as_json:
        print(json.dumps(cert.as_dict(), indent=2))
        return cert.passed
    ok = True
    for check in cert.checks:
        label = check.name
        if "covering walk" in check.name:
            label = "min covering walk = 36"
        ok &= _verdict(label, check.ok)
    if cert.caveat:
        print(f"note: {cert.caveat}")
    return ok


def _verify_counts2(_ctx) -> bool:
    cat2 = enumerate2(2)
    cat1 = enumerate2(1)
    both = sum(1 for r in cat2.records if len(set(r.representative.ids)) == 2)
    ok = True
    ok &= _verdict("two-colour ≡₂-classes = 90", both == 90)
    ok &= _verdict("one-colour classes = 3", len(cat1.records) - 1 == 3)
    ok &= _verdict("grand total = 97", len(cat2.records) == 97)
    ok &= _verdict("max representative length = 8", cat2.max_length == 8)
    return ok


def _verify_counts3(_ctx) -> bool:
    patterns = merge_patterns(3)
    ok = True
    ok &= _verdict("threshold patterns = 26", len(patterns) == 26)
    ok &= _verdict("feasible patterns = 22", sum(1 for p in patterns if feasible(p)) == 22)
    cat = enumerate2(3)
    ok &= _verdict("sweep complete", cat.complete)
    ok &= _verdict("max representative length = 15", cat.max_length == 15)
    fully_split = sum(
        1 for r in cat.records if r.descriptor.config.tokens == ("X", "X", "X", "Y", "Y", "Y")
    )
    ok &= _verdict("classes on x1<x2<x3<y3<y2<y1 = 18432", fully_split == 18432)
    return ok


_VERIFIERS = {
    "len70": _verify_len70,
    "palindrome15": _verify_palindrome15,
    "len74": _verify_len74,
    "counts2": _verify_counts2,
    "counts3": _verify_counts3,
}


def cmd_verify(args) -> int:
    verifier = _VERIFIERS.get(args.name)
    if verifier is None:
        print(
            f"unknown example {args.name!r}; choose from {', '.join(sorted(_VERIFIERS))}",
            file=sys.stderr,
        )
        return 2
    if args.json and args.name == "len74":
        return 0 if _verify_len74(TypeContext(), as_json=True) else 1
    return 0 if verifier(TypeContext()) else 1


def cmd_serve(args) -> int:
    game_service.run(host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="efo",
        description="Decide, classify, canonicalise and play n-move game equivalence "
        "of finite coloured linear orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def palette_flag(p):
        p.add_argument(
            "-m", "--colours", type=int, default=3, help="palette size for parsing (default 3)"
        )

    p = sub.add_parser("equiv", help="decide n-move equivalence of two orders")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-n", "--moves", type=int, required=True)
    palette_flag(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("oracle", help="brute-force minimax winner (small inputs)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-n", "--moves", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    palette_flag(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("canon", help="2-equivalent optimal substring")
    p.add_argument("order", nargs="?")
    p.add_argument("--file", help="newline-separated orders, '#' comments ignored")
    palette_flag(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("chars", help="n-characters of every position")
    p.add_argument("order", nargs="?")
    p.add_argument("--file")
    p.add_argument("-n", "--moves", type=int, default=2)
    p.add_argument("--json", action="store_true")
    palette_flag(p)
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("enumerate", help="catalogue all 2-classes over m colours")
    p.add_argument("-m", "--colours", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="sweep length (default m^2+2m)")
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--dump", action="store_true", help="print the JSON catalogue")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("debruijn", help="string with every k-window exactly once")
    p.add_argument("-m", "--colours", type=int, required=True)
    p.add_argument("-k", "--window", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_debruijn)

    p = sub.add_parser("digraph", help="window digraph of a region, as DOT")
    p.add_argument("order")
    p.add_argument("-k", "--window", type=int, default=5)
    p.add_argument("--region", type=int, nargs=2, metavar=("LO", "HI"), help="1-based, inclusive")
    p.add_argument("--collapsed", action="store_true")
    p.add_argument("--dot", metavar="FILE")
    palette_flag(p)
    p.set_defaults(func=cmd_digraph)

    p = sub.add_parser("verify", help="run a named fixture verification")
    p.add_argument("name", help="len70 | palindrome15 | len74 | counts2 | counts3")
    p.add_argument("--json", action="store_true", help="structured certificate (len74)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the game session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ParseError, BudgetError, InfeasibleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
