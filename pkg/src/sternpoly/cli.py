"""Command line front end.

Subcommands: poly, alpha, series, eval, cf, verify.  Exit codes are stable:
0 success / all checks pass, 1 check failure, 2 bad input, 3 size cap
exceeded, 4 non-convergence, 5 vanished denominator.  JSON output keeps
every number as a decimal string.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .contfrac import (
    cf_terms,
    convergents,
    degree_ledger,
    eval_cf_at_rational,
    regular_cf_transform,
    verify_cf1,
    verify_degree_ledger,
    verify_regular_transform,
    _rational_convergents,
)
from .errors import CapExceeded, InvalidParameter, NonConvergence, SternError
from .mahler import (
    DEFAULT_PRECISION,
    a_matrix_pole_check,
    det_check,
    g_at_one_spectral,
    g_constant_terms,
    g_nonvanishing,
    verify_g_construction,
)
from .poly import set_term_cap
from .report import CheckItem, CheckReport, decimal_str, parse_rational, rational_str
from .series import (
    eval_series_certified,
    h_series,
    verify_agreement_monotone,
    verify_functional_equation,
    verify_mat_system,
)
from .stern import Params, alpha, stern_poly

TERM_CAP_ENV = "STERNPOLY_TERM_CAP"
SUITES = ("stern", "series", "contfrac", "mahler")


def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def _apply_term_cap(args) -> None:
    cap = getattr(args, "term_cap", None)
    if cap is None:
        env = os.environ.get(TERM_CAP_ENV)
        if env is not None:
            try:
                cap = int(env)
            except ValueError:
                raise InvalidParameter(f"{TERM_CAP_ENV} must be an integer, got {env!r}")
    if cap is not None:
        set_term_cap(cap)


def _parse_int_list(text: str, name: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise InvalidParameter(f"--{name} expects a comma-separated integer list, got {text!r}")
    if not values:
        raise InvalidParameter(f"--{name} list is empty")
    return values


# -- subcommands --------------------------------------------------------------


def cmd_poly(args) -> int:
    p = stern_poly(args.t, args.n)
    if args.format == "json":
        print(_dump(p.to_json_obj()))
    else:
        print(p)
    return 0


def cmd_alpha(args) -> int:
    a = alpha(args.k, args.n)
    if args.format == "json":
        print(_dump({"k": str(a.k), "n": str(a.n), "value": str(a.value)}))
    else:
        print(a.value)
    return 0


def cmd_series(args) -> int:
    series = h_series(Params(t=args.t, k=args.k), args.order)
    if args.format == "json":
        print(_dump(series.to_json_obj()))
    else:
        print(series.to_poly())
        print(f"coeffs: {series.bitstring}")
    return 0


def cmd_eval(args) -> int:
    params = Params(t=args.t, k=args.k)
    point = parse_rational(args.alpha)
    inner = point**params.tk
    f1 = eval_series_certified(params, point, args.order)
    f2 = eval_series_certified(params, inner, args.order)
    ratio = None if f2.contains_zero() else f1.divide(f2)
    if args.format == "json":
        obj = {
            "t": str(args.t),
            "k": str(args.k),
            "alpha": rational_str(point),
            "order": str(args.order),
            "tail_coeff_bound": "1",
            "f1": f1.to_json_obj(),
            "f2": f2.to_json_obj(),
            "ratio": "undetermined" if ratio is None else ratio.to_json_obj(),
        }
        print(_dump(obj))
    else:
        digits = 30
        print(f"H({rational_str(point)}) in [{decimal_str(f1.lo, digits)}, {decimal_str(f1.hi, digits)}]")
        print(f"H({rational_str(inner)}) in [{decimal_str(f2.lo, digits)}, {decimal_str(f2.hi, digits)}]")
        if ratio is None:
            print("ratio: undetermined (denominator interval contains zero)")
        else:
            print(f"ratio in [{decimal_str(ratio.lo, digits)}, {decimal_str(ratio.hi, digits)}]")
    return 0


def cmd_cf(args) -> int:
    params = Params(t=args.t, k=args.k)
    at = None if args.at is None else parse_rational(args.at)
    if args.regular:
        if at != Fraction(1, 2):
            raise InvalidParameter("--regular requires --at 1/2 exactly")
        return _cf_regular(params, args)
    if at is None:
        return _cf_symbolic(params, args)
    return _cf_at(params, at, args)


def _cf_symbolic(params: Params, args) -> int:
    b0, terms = cf_terms(params, args.depth)
    ledger = degree_ledger(params, args.depth) if args.depth else None
    pairs = convergents(b0, terms)
    if args.format == "json":
        obj = {
            "t": str(params.t),
            "k": str(params.k),
            "depth": str(args.depth),
            "b0": b0.to_json_obj(),
            "terms": [
                {
                    "level": str(term.level),
                    "a": term.a.to_json_obj(),
                    "b": term.b.to_json_obj(),
                    "d_n": str(ledger.d[term.level - 1]),
                    "D_n": str(ledger.alternating[term.level - 1]),
                }
                for term in terms
            ],
            "convergents": [{"p": c.p.to_json_obj(), "q": c.q.to_json_obj()} for c in pairs],
        }
        print(_dump(obj))
    else:
        print(f"b0 = {b0}")
        for term in terms:
            print(f"level {term.level}: a = {term.a}, b = {term.b}")
        for c in pairs:
            print(f"convergent {c.index}: p = {c.p}, q = {c.q}")
    return 0


def _cf_at(params: Params, at: Fraction, args) -> int:
    values = eval_cf_at_rational(params, at, args.depth)
    b0, terms = cf_terms(params, args.depth)
    ledger = degree_ledger(params, args.depth) if args.depth else None
    if args.format == "json":
        obj = {
            "t": str(params.t),
            "k": str(params.k),
            "depth": str(args.depth),
            "at": rational_str(at),
            "b0": rational_str(b0.evaluate(at)),
            "terms": [
                {
                    "level": str(term.level),
                    "a": rational_str(term.a.evaluate(at)),
                    "b": rational_str(term.b.evaluate(at)),
                    "d_n": str(ledger.d[term.level - 1]),
                    "D_n": str(ledger.alternating[term.level - 1]),
                }
                for term in terms
            ],
            "convergents": [rational_str(v) for v in values],
        }
        print(_dump(obj))
    else:
        for depth, value in enumerate(values):
            print(f"depth {depth}: {value} ~ {decimal_str(value, 12)}")
    return 0


def _cf_regular(params: Params, args) -> int:
    half = Fraction(1, 2)
    regular = regular_cf_transform(params, max(args.depth, 1))
    b0, _ = cf_terms(params, 0)
    b0_value = b0.evaluate(half)
    values = _rational_convergents(b0_value, [(Fraction(n), Fraction(d)) for n, d in regular])
    plain = eval_cf_at_rational(params, half, len(regular))
    preserved = values == plain
    if args.format == "json":
        obj = {
            "t": str(params.t),
            "k": str(params.k),
            "depth": str(len(regular)),
            "at": "1/2",
            "b0": rational_str(b0_value),
            "terms": [{"num": str(n), "den": str(d)} for n, d in regular],
            "convergents": [rational_str(v) for v in values],
            "value_preserved": preserved,
        }
        print(_dump(obj))
    else:
        print(f"b0 = {b0_value}")
        for n, (num, den) in enumerate(regular, start=1):
            print(f"level {n}: {num}/{den}")
        for depth, value in enumerate(values):
            print(f"depth {depth}: {value} ~ {decimal_str(value, 12)}")
        print(f"value preserved: {preserved}")
    return 0 if preserved else 1


# -- the verify runner ---------------------------------------------------------


def _suite_reports(name: str, params: Params, depth: int, order: int, precision: int):
    if name == "stern":
        return [verify_three_term_entry(params, depth)]
    if name == "series":
        return [
            verify_functional_equation(params, order),
            verify_mat_system(params, order),
            verify_agreement_monotone(params),
        ]
    if name == "contfrac":
        regular_depth = min(depth, 4 if params.t == 2 else 3)
        return [
            verify_cf1(params, max(2, depth)),
            verify_degree_ledger(params, max(depth, 6)),
            verify_regular_transform(params, max(1, regular_depth)),
        ]
    if name == "mahler":
        return [
            a_matrix_pole_check(params),
            verify_g_construction(params, depth),
            g_constant_terms(params, depth),
            g_nonvanishing(params, depth),
            det_check(params, min(depth, 6)),
            g_at_one_spectral(params, max(3, depth), precision)[0],
        ]
    raise InvalidParameter(f"unknown suite {name!r}")


def verify_three_term_entry(params: Params, depth: int) -> CheckReport:
    from .stern import verify_three_term

    return verify_three_term(params, max(2, depth))


def run_verify(t_values, k_values, depth, order, precision, suite) -> tuple[CheckReport, int]:
    """Run the requested suites over the parameter grid; deterministic order.

    Returns the merged report and the exit code: a resource-error code if
    any sub-run hit one (with the partial report retained), else 0/1 for
    pass/fail.
    """
    wanted = SUITES if suite == "all" else (suite,)
    report = CheckReport(
        suite=suite,
        params={
            "t": ",".join(str(t) for t in t_values),
            "k": ",".join(str(k) for k in k_values),
            "depth": str(depth),
            "order": str(order),
            "precision": str(precision),
        },
    )
    error_code = 0
    for t in sorted(t_values):
        for k in sorted(k_values):
            params = Params(t=t, k=k)
            for name in wanted:
                try:
                    subs = _suite_reports(name, params, depth, order, precision)
                except (CapExceeded, NonConvergence) as exc:
                    report.checks.append(
                        CheckItem(
                            f"{name}.aborted",
                            {"t": str(t), "k": str(k)},
                            False,
                            f"{type(exc).__name__}: {exc}",
                        )
                    )
                    if error_code == 0:
                        error_code = exc.exit_code
                    continue
                for sub in subs:
                    for item in sub.checks:
                        merged = {"t": str(t), "k": str(k)}
                        merged.update(item.params)
                        report.checks.append(
                            CheckItem(f"{sub.suite}.{item.name}", merged, item.passed, item.detail)
                        )
    return report, error_code


def cmd_verify(args) -> int:
    t_values = _parse_int_list(args.t, "t")
    k_values = _parse_int_list(args.k, "k")
    report, error_code = run_verify(
        t_values, k_values, args.depth, args.order, args.precision, args.suite
    )
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    if error_code:
        return error_code
    return 0 if report.passed else 1


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("--term-cap", type=int, default=None, metavar="N",
                        help=f"override the polynomial term cap (also env {TERM_CAP_ENV})")

    parser = argparse.ArgumentParser(
        prog="sternpoly",
        description="Exact arithmetic and identity checks for Type 1 Stern polynomials, "
        "their limit series, continued fractions, and the associated 2x2 system.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="print a Stern polynomial")
    p.add_argument("--t", type=int, required=True, help="polynomial base, >= 2")
    p.add_argument("--n", type=int, required=True, help="index, >= 0")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("alpha", parents=[common], help="print an index sequence value")
    p.add_argument("--k", type=int, required=True, help="block width, >= 1")
    p.add_argument("--n", type=int, required=True, help="sequence position, >= 0")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("series", parents=[common], help="print limit series coefficients")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, required=True, help="number of coefficients")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("eval", parents=[common],
                       help="certified interval for the series value at a rational point")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=str, required=True, help="rational point p/q, 0 < |p/q| < 1")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cf", parents=[common], help="continued fraction terms and convergents")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth", type=int, default=4, help="number of levels (default 4)")
    p.add_argument("--at", type=str, default=None, help="evaluate at a rational point p/q")
    p.add_argument("--regular", action="store_true",
                   help="rescale to the regular form; requires --at 1/2")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("verify", parents=[common], help="run identity check suites over a grid")
    p.add_argument("--t", type=str, default="2,3", help="comma list of bases (default 2,3)")
    p.add_argument("--k", type=str, default="1,2,3", help="comma list of widths (default 1,2,3)")
    p.add_argument("--depth", type=int, default=5, help="recursion/level depth (default 5)")
    p.add_argument("--order", type=int, default=256, help="series truncation order (default 256)")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                   help="spectral working precision in decimal digits (default 60)")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_term_cap(args)
        return args.func(args)
    except SternError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
