"""Command-line interface: ``fermat <subcommand> [args]``.

Exit codes: 0 ok, 2 parse error, 3 evaluation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

from .core import FermatReal, format_real, iota
from .errors import FermatError, NonPositiveOrderError, ParseError
from .expr import as_function, evaluate, free_variables, parse
from .calculus import derive
from .order import (
    compare,
    nilpotency_index,
    order,
    product_power_order,
    product_power_zero,
)
from .plot import graph_samples, render_csv, render_svg

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _rational_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _value_json(v: FermatReal) -> dict:
    return {
        "std": v.std,
        "terms": [
            {"coeff": t.coeff, "order": _rational_str(t.order)} for t in v.terms
        ],
    }


def _bindings(args) -> dict[str, FermatReal]:
    env: dict[str, FermatReal] = {}
    for item in args.bind or []:
        name, sep, text = item.partition("=")
        if not sep or not _NAME_RE.match(name):
            raise FermatError(f"bad binding {item!r}: expected name=expression")
        env[name] = evaluate(parse(text))
    return env


def _emit(args, text: str, payload: dict) -> int:
    print(json.dumps(payload) if args.json else text)
    return 0


def _cmd_eval(args) -> int:
    v = evaluate(parse(args.expr), _bindings(args))
    return _emit(args, str(v), _value_json(v))


def _cmd_cmp(args) -> int:
    env = _bindings(args)
    verdict = compare(evaluate(parse(args.left), env), evaluate(parse(args.right), env))
    return _emit(args, verdict.value, {"verdict": verdict.value})


def _cmd_order(args) -> int:
    w = order(evaluate(parse(args.expr), _bindings(args)))
    return _emit(args, _rational_str(w), {"order": _rational_str(w)})


def _cmd_nilpotent(args) -> int:
    k = nilpotency_index(evaluate(parse(args.expr), _bindings(args)))
    return _emit(args, "none" if k is None else str(k), {"nilpotency_index": k})


def _cmd_diff(args) -> int:
    e = parse(args.expr)
    names = free_variables(e)
    if len(names) > 1:
        raise FermatError(
            "expression must have exactly one free variable, found: "
            + ", ".join(sorted(names))
        )
    m = derive(as_function(e), args.at)
    return _emit(args, format_real(m), {"derivative": m})


def _parse_rational_list(text: str, what: str) -> list[Fraction]:
    out = []
    for piece in text.split(","):
        try:
            out.append(Fraction(piece.strip()))
        except (ValueError, ZeroDivisionError):
            raise FermatError(f"bad {what} entry: {piece.strip()!r}") from None
    return out


def _cmd_prodzero(args) -> int:
    orders = _parse_rational_list(args.orders, "order")
    try:
        exps = [int(piece.strip()) for piece in args.exps.split(",")]
    except ValueError:
        raise FermatError(f"bad exponent list: {args.exps!r}") from None
    if product_power_zero(orders, exps):
        return _emit(args, "zero", {"zero": True, "order": None})
    w = product_power_order(orders, exps)
    return _emit(
        args,
        f"nonzero, order {_rational_str(w)}",
        {"zero": False, "order": _rational_str(w)},
    )


def _cmd_iota(args) -> int:
    text = args.k.strip()
    if text in ("inf", "infinity"):
        k = math.inf
    else:
        try:
            k = Fraction(text)
        except (ValueError, ZeroDivisionError):
            print(f"fermat: bad --k value {args.k!r}", file=sys.stderr)
            return 2
    v = iota(evaluate(parse(args.expr), _bindings(args)), k)
    return _emit(args, str(v), _value_json(v))


def _cmd_canon(args) -> int:
    return _cmd_eval(args)


def _cmd_plot(args) -> int:
    if not args.delta > 0:
        print("fermat: --delta must be > 0", file=sys.stderr)
        return 2
    if args.samples < 2:
        print("fermat: --samples must be >= 2", file=sys.stderr)
        return 2
    v = evaluate(parse(args.expr), _bindings(args))
    sample = graph_samples(v, args.delta, args.samples)
    if args.format == "csv":
        content = render_csv(sample)
    else:
        content = render_svg(sample, label=args.expr)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)
    return 0


def _add_common(sub, bind=True):
    if bind:
        sub.add_argument(
            "-b",
            "--bind",
            action="append",
            metavar="NAME=EXPR",
            help="bind a variable (repeatable)",
        )
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fermat",
        description="Arithmetic with nilpotent infinitesimals: evaluate, "
        "compare, differentiate, decide nilpotency, and plot.",
    )
    subs = p.add_subparsers(dest="command", required=True)

    s = subs.add_parser("eval", help="evaluate an expression to canonical form")
    s.add_argument("expr")
    _add_common(s)
    s.set_defaults(handler=_cmd_eval)

    s = subs.add_parser("canon", help="canonicalize an expression (alias of eval)")
    s.add_argument("expr")
    _add_common(s)
    s.set_defaults(handler=_cmd_canon)

    s = subs.add_parser("cmp", help="compare two expressions: LT, EQ or GT")
    s.add_argument("left")
    s.add_argument("right")
    _add_common(s)
    s.set_defaults(handler=_cmd_cmp)

    s = subs.add_parser("order", help="order of the value (0 for plain reals)")
    s.add_argument("expr")
    _add_common(s)
    s.set_defaults(handler=_cmd_order)

    s = subs.add_parser("nilpotent", help="smallest k with value**k == 0, or none")
    s.add_argument("expr")
    _add_common(s)
    s.set_defaults(handler=_cmd_nilpotent)

    s = subs.add_parser("diff", help="derivative of a one-variable expression")
    s.add_argument("expr")
    s.add_argument("--at", type=float, required=True, metavar="X")
    _add_common(s)
    s.set_defaults(handler=_cmd_diff)

    s = subs.add_parser(
        "prodzero", help="decide whether a product of powers of infinitesimals is 0"
    )
    s.add_argument("--orders", required=True, help="comma-separated orders, e.g. 6,6,6,2")
    s.add_argument("--exps", required=True, help="comma-separated natural exponents")
    _add_common(s, bind=False)
    s.set_defaults(handler=_cmd_prodzero)

    s = subs.add_parser("iota", help="truncate: drop terms of order <= K")
    s.add_argument("expr")
    s.add_argument("--k", required=True, metavar="K", help="rational level, or 'inf'")
    _add_common(s)
    s.set_defaults(handler=_cmd_iota)

    s = subs.add_parser("plot", help="write the representing curve as SVG or CSV")
    s.add_argument("expr")
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--samples", type=int, default=64)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=("svg", "csv"), default="svg")
    _add_common(s)
    s.set_defaults(handler=_cmd_plot)

    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, NonPositiveOrderError) as e:
        print(f"fermat: {e}", file=sys.stderr)
        return 2
    except (FermatError, ValueError) as e:
        print(f"fermat: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"fermat: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
