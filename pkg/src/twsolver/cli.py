"""Command line entry point ``tw``.

Exit codes: 0 success, 1 invalid decomposition, 2 usage or input error,
10 proved that the treewidth exceeds k, 20 node budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import drivers, generators, oracle
from .config import Budget, BudgetExceeded
from .pace import FormatError, emit_gr, emit_td, parse_gr, parse_td
from .treedec import validate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_NO = 10
EXIT_BUDGET = 20


def _read_graph(path: str):
    return parse_gr(Path(path).read_text(encoding="utf-8"))


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from None
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1]")
    return value


def _cmd_exact(args) -> int:
    g = _read_graph(args.graph)
    td = drivers.exact(g, args.k, backend=args.backend, budget=Budget(args.budget))
    if td is None:
        print(f"TW > {args.k}")
        return EXIT_NO
    _write(emit_td(td, g.n), args.output)
    if args.output:
        print(f"width {td.width}")
    return EXIT_OK


def _cmd_approx(args) -> int:
    g = _read_graph(args.graph)
    bound = drivers.approx_width(args.k, args.eps)
    td = drivers.approx(g, args.k, args.eps, budget=Budget(args.budget))
    if td is None:
        print(f"TW > {args.k}")
        return EXIT_NO
    _write(emit_td(td, g.n), args.output)
    print(f"width {td.width} (bound {bound})", file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_OK


def _cmd_width(args) -> int:
    g = _read_graph(args.graph)
    width, td = drivers.treewidth(g, backend=args.backend, budget=Budget(args.budget))
    out = args.output or str(Path(args.graph).with_suffix(".td"))
    _write(emit_td(td, g.n), out)
    print(width)
    return EXIT_OK


def _cmd_validate(args) -> int:
    g = _read_graph(args.graph)
    try:
        td = parse_td(Path(args.td).read_text(encoding="utf-8"), g)
    except FormatError as exc:
        print(exc)
        return EXIT_INVALID
    print(f"valid, width {validate(g, td).width}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    width, _ = oracle.exact_tw(g)
    print(width)
    return EXIT_OK


def _cmd_gen(args) -> int:
    kind, params = args.kind, args.params
    try:
        if kind == "gnp":
            n, p = params
            g = generators.gnp(int(n), float(p), args.seed)
        elif kind == "grid":
            r, c = params
            g = generators.grid(int(r), int(c))
        elif kind == "ktree":
            n, k = params
            g = generators.ktree(int(n), int(k), args.seed)
        elif kind == "cycle":
            (n,) = params
            g = generators.cycle(int(n))
        else:
            raise ValueError(f"unknown kind {kind!r}")
    except ValueError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(emit_gr(g), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tw", description="Treewidth through subset treewidth.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="decide tw <= k and emit a decomposition")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--backend", choices=drivers.BACKENDS, default="stw")
    p.add_argument("--budget", type=int, default=None, help="search node cap")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("approx", help="decomposition of width at most floor((1+eps)k)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--eps", type=_rational, required=True, help="rational p/q")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("width", help="compute the treewidth")
    p.add_argument("--backend", choices=drivers.BACKENDS, default="stw")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_width)

    p = sub.add_parser("validate", help="check a decomposition")
    p.add_argument("graph")
    p.add_argument("td")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("oracle", help="brute-force treewidth (n <= 20)")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("kind", choices=["gnp", "grid", "ktree", "cycle"])
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", 0) is not None and getattr(args, "k", 0) < 0:
        print("k must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}")
        return EXIT_BUDGET
    except (FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
