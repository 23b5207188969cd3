"""Command-line front end: ``sft2d analyze | factorize | oracle``.

Exit codes: 0 when a result was computed (``unknown`` verdicts included),
2 for bad input, 3 when the ``SFT2D_BUDGET`` setting is unusable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .analysis import analyze
from .budget import ENV_VAR, BudgetConfigError, BudgetExceeded, default_budget
from .graph import Direction, Graph2D, InputError, load_graph
from .oracle import DEFAULT_GLUE_MARGIN, enumerate_patterns, glue, parse_pattern, periodic_search
from .products import MODES, factorize, factorize_2d
from .strips import DEFAULT_K_MAX

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET_CONFIG = 3

PLUMBING = "plumbing"


def _direction(text: str) -> Direction:
    try:
        return Direction.parse(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _non_negative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sft2d", description="Analyze two-dimensional shifts of finite type given by a pair of 0/1 matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every matrix-level check")
    a.add_argument("--input", required=True, help="graph JSON with symbols, H and V")
    a.add_argument("--direction", type=_direction, action="append", default=[], metavar="R,S")
    a.add_argument("--k-max", type=_positive, default=DEFAULT_K_MAX, help=f"largest strip width (default {DEFAULT_K_MAX})")
    a.add_argument("--format", choices=("json", "text"), default="json")

    f = sub.add_parser("factorize", help="recognize tensor or Cartesian products")
    f.add_argument("--input", required=True)
    f.add_argument("--mode", choices=MODES, required=True)
    f.add_argument("--scope", choices=("matrix", "graph2d"), default="graph2d")

    o = sub.add_parser("oracle", help="brute-force pattern searches")
    osub = o.add_subparsers(dest="oracle_command", required=True)
    pat = osub.add_parser("patterns", help="list admissible w x h patterns")
    pat.add_argument("--input", required=True)
    pat.add_argument("--width", type=_positive, required=True)
    pat.add_argument("--height", type=_positive, required=True)
    pat.add_argument("--margin", type=_non_negative, default=0)
    gl = osub.add_parser("glue", help="place two patterns in one admissible rectangle")
    gl.add_argument("--input", required=True)
    gl.add_argument("--pattern-a", required=True, help="pattern file, or inline labels (top row first, rows split by ';')")
    gl.add_argument("--pattern-b", required=True)
    gl.add_argument("--max-offset", type=_positive, required=True)
    gl.add_argument("--direction", type=_direction, default=None, metavar="R,S")
    gl.add_argument("--margin", type=_non_negative, default=DEFAULT_GLUE_MARGIN)
    per = osub.add_parser("periodic", help="list doubly periodic orbits")
    per.add_argument("--input", required=True)
    per.add_argument("--max-period", type=_positive, required=True)
    return p


def _pattern_arg(value: str, g: Graph2D):
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return parse_pattern(fh.read(), g)
    return parse_pattern(value.replace(";", "\n"), g)


def _emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_analyze(args, g: Graph2D) -> None:
    rep = analyze(g, args.direction, args.k_max)
    if args.format == "text":
        sys.stdout.write(rep.to_text() + "\n")
        return
    out = rep.to_dict()
    out["config"] = {"directions": [d.as_list() for d in args.direction], "k_max": args.k_max, "input": args.input}
    _emit(out)


def cmd_factorize(args, g: Graph2D) -> None:
    budget = default_budget()
    if args.scope == "graph2d":
        res = factorize_2d(g, args.mode, budget=budget)
        items = [{"H": h.to_dict(), "V": v.to_dict()} for h, v in res]
    else:
        items = []
        exceeded = False
        for name, m in (("H", g.H), ("V", g.V)):
            r = factorize(m, args.mode, budget=budget)
            exceeded |= r.budget_exceeded
            items.append({"matrix": name, "factorizations": [x.to_dict() for x in r]})
        res = None
    _emit(
        {
            "citation": "tensor/Cartesian block-form recognition",
            "mode": args.mode,
            "scope": args.scope,
            "symbols": list(g.symbols.names),
            "budget": budget,
            "budget_exceeded": res.budget_exceeded if res is not None else exceeded,
            "factorizations": items,
        }
    )


def cmd_oracle(args, g: Graph2D) -> None:
    budget = default_budget()
    if args.oracle_command == "patterns":
        base = {
            "citation": PLUMBING,
            "width": args.width,
            "height": args.height,
            "margin": args.margin,
            "budget": budget,
        }
        try:
            pats = enumerate_patterns(g, args.width, args.height, args.margin, budget)
        except BudgetExceeded:
            _emit({**base, "exhausted": True, "count": None, "patterns": None})
            return
        _emit({**base, "exhausted": False, "count": len(pats), "patterns": [p.labels(g) for p in pats]})
    elif args.oracle_command == "glue":
        pa, pb = _pattern_arg(args.pattern_a, g), _pattern_arg(args.pattern_b, g)
        r = glue(g, pa, pb, args.max_offset, args.direction, args.margin, budget)
        _emit({"citation": PLUMBING, "budget": budget, **r.to_dict(g)})
    else:
        base = {"citation": PLUMBING, "max_period": args.max_period, "budget": budget}
        try:
            orbits = periodic_search(g, args.max_period, budget)
        except BudgetExceeded:
            _emit({**base, "exhausted": True, "orbits": None})
            return
        _emit(
            {
                **base,
                "exhausted": False,
                "orbits": [
                    {"horizontal_period": o.horizontal_period, "vertical_period": o.vertical_period, "domain": o.domain.labels(g)}
                    for o in orbits
                ],
            }
        )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        default_budget()
    except BudgetConfigError as exc:
        print(f"sft2d: {exc}", file=sys.stderr)
        return EXIT_BUDGET_CONFIG
    try:
        g = load_graph(args.input)
        if args.command == "analyze":
            cmd_analyze(args, g)
        elif args.command == "factorize":
            cmd_factorize(args, g)
        else:
            cmd_oracle(args, g)
    except InputError as exc:
        print(f"sft2d: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
