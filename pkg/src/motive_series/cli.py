"""Batch command-line front end.

Subcommands: resolve, graph, poincare, hilbert, multiplicity, verify.
Exit codes: 0 success, 2 validation error, 3 precision exhausted,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import blowup, formulas, graph, jets
from .curves import Curve
from .errors import (
    InvalidInput,
    MotiveSeriesError,
    PrecisionExhausted,
    VerificationFailure,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECISION = 3
EXIT_VERIFY = 4


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput("cannot read %s: %s" % (path, exc)) from exc


def _parse_vector(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InvalidInput("bad vector %r" % text) from exc


def _parse_poly(text):
    """Polynomial in x, y: either JSON terms or an expression like y^2-x^3."""
    text = text.strip()
    if text.startswith("{"):
        doc = json.loads(text)
        return {
            tuple(t["exp"]): Fraction(t["coeff"]) for t in doc["terms"]
        }
    import sympy

    x, y = sympy.symbols("x y")
    expr = sympy.sympify(text.replace("^", "**"), locals={"x": x, "y": y})
    poly = sympy.Poly(sympy.expand(expr), x, y)
    out = {}
    for (a, b), c in poly.terms():
        out[(int(a), int(b))] = Fraction(str(c))
    return out


def _emit(doc, pretty_text, fmt, out=None):
    out = out if out is not None else sys.stdout
    if fmt == "json":
        out.write(json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1))
        out.write("\n")
    else:
        out.write(pretty_text)
        if not pretty_text.endswith("\n"):
            out.write("\n")


def _series_pretty(series, symbol):
    lines = []
    for e in sorted(series.coeffs):
        mono = " ".join(
            "t%d^%d" % (i + 1, x) for i, x in enumerate(e) if x
        ) or "1"
        lines.append("%-20s (%s)" % (mono, series.coeffs[e].format(symbol)))
    return "\n".join(lines) if lines else "0"


def _modification_from_args(args):
    if getattr(args, "script", None):
        return blowup.run_script(_load_json(args.script))
    raise InvalidInput("this command needs --script")


def cmd_resolve(args):
    curve = Curve.from_json(_load_json(args.curve))
    _, g, attach = blowup.auto_resolve(curve, max_steps=args.max_steps)
    doc = g.to_json()
    pretty = "self-intersections: %s\nedges: %s\narrows: %s" % (
        list(g.self_ints),
        [list(map(lambda i: i + 1, e)) for e in g.edges],
        [a + 1 for a in attach],
    )
    _emit(doc, pretty, args.format)
    return EXIT_OK


def cmd_graph(args):
    m = _modification_from_args(args)
    g = m.graph()
    _emit(g.to_json(), json.dumps(g.to_json(), sort_keys=True), args.format)
    return EXIT_OK


def _graph_series(args, g):
    bound = _parse_vector(args.bound)
    if args.filtration == "curve":
        if args.kind not in (None, "Pg", "P"):
            raise InvalidInput("curve filtration on a graph supports kinds Pg and P")
        out = formulas.curve_series(g, bound)
        if args.kind == "P":
            out = out.at_one()
        return out, "q"
    if args.kind in (None, "Pg"):
        return formulas.divisorial_series(g, bound), "q"
    if args.kind == "Phat":
        return formulas.semigroup_class_series(g, bound), "L"
    if args.kind == "P":
        return formulas.divisorial_poincare_product(g, bound), "L"
    raise InvalidInput("unsupported kind %r for a divisorial graph" % args.kind)


def cmd_poincare(args):
    if args.curve:
        curve = Curve.from_json(_load_json(args.curve))
        bound = _parse_vector(args.bound)
        kind = args.kind or "P"
        oracle = jets.HilbertOracle(curve, max_jet=args.max_jet)
        series = jets.series(oracle, kind, bound)
        symbol = "q" if kind in ("Pg", "Lg") else "L"
    else:
        g = _graph_input(args)
        series, symbol = _graph_series(args, g)
    _emit(series.to_json(), _series_pretty(series, symbol), args.format)
    return EXIT_OK


def _graph_input(args):
    if args.graph:
        return graph.DualGraph.from_json(_load_json(args.graph))
    if args.script:
        return blowup.run_script(_load_json(args.script)).graph()
    raise InvalidInput("need --curve, --graph or --script")


def cmd_hilbert(args):
    at = _parse_vector(args.at)
    if args.curve:
        curve = Curve.from_json(_load_json(args.curve))
        value = jets.HilbertOracle(curve, max_jet=args.max_jet).hilbert(at)
    elif args.script:
        m = _modification_from_args(args)
        value = blowup.DivisorialOracle(m, max_jet=args.max_jet).hilbert(at)
    else:
        raise InvalidInput("need --curve or --script")
    _emit({"value": value}, str(value), args.format)
    return EXIT_OK


def cmd_multiplicity(args):
    m = _modification_from_args(args)
    poly = _parse_poly(args.poly)
    if args.at:
        comp = int(args.at) - 1
        value = m.multiplicity(comp, poly)
        _emit({"value": value}, str(value), args.format)
    else:
        vec = m.multiplicity_vector(poly)
        _emit({"value": list(vec)}, ",".join(map(str, vec)), args.format)
    return EXIT_OK


def cmd_verify(args):
    from . import verify

    results = verify.run_all()
    failures = [(n, d) for n, ok, d in results if not ok]
    for name, ok, detail in results:
        line = "%-4s %s" % ("ok" if ok else "FAIL", name)
        if not ok and detail:
            line += "  [%s]" % detail
        print(line)
    print("%d/%d checks passed" % (len(results) - len(failures), len(results)))
    if failures:
        return EXIT_VERIFY
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="motive-series",
        description="Exact Poincare series of multi-index filtrations on curve germs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, bound=False, at=False, poly=False):
        p.add_argument("--curve", help="curve JSON file")
        p.add_argument("--graph", help="dual graph JSON file")
        p.add_argument("--script", help="blow-up script JSON file")
        p.add_argument("--format", choices=("json", "pretty"), default="json")
        p.add_argument("--max-jet", type=int, default=64, help="jet order cap")
        p.add_argument("--max-steps", type=int, default=64, help="blow-up budget")
        if bound:
            p.add_argument("--bound", required=True, help="window, e.g. 6,6")
            p.add_argument("--kind", choices=jets.SERIES_KINDS)
            p.add_argument(
                "--filtration", choices=("curve", "divisorial"), default="divisorial"
            )
        if at:
            p.add_argument("--at", help="query point, e.g. 3,3 (component for multiplicity)")
        if poly:
            p.add_argument("--poly", required=True, help="polynomial in x,y")

    p = sub.add_parser("resolve", help="embedded resolution of a plane curve")
    add_common(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("graph", help="dual graph of a blow-up script")
    add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("poincare", help="series of a filtration")
    add_common(p, bound=True)
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("hilbert", help="Hilbert function value")
    add_common(p, at=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("multiplicity", help="divisorial multiplicities of a polynomial")
    add_common(p, at=True, poly=True)
    p.set_defaults(func=cmd_multiplicity)

    p = sub.add_parser("verify", help="run the fixture cross-validation suite")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionExhausted as exc:
        print("precision exhausted: %s" % exc, file=sys.stderr)
        return EXIT_PRECISION
    except VerificationFailure as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return EXIT_VERIFY
    except (InvalidInput, MotiveSeriesError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
