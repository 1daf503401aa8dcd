"""Command-line front end.

Exit codes: 0 success/pass, 1 verification mismatch or solver failure,
2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import RBonacciError
from .exactpoly import IntPolynomial, formal_derivative, to_json, to_text
from .rbonacci import (
    InvalidParams,
    RBonacciParams,
    build_closed_form,
    build_derivative_closed_form,
    build_recurrence,
)
from .render import render_svg, roots_to_csv, roots_to_json
from .report import rational_str
from .roots import (
    DEFAULT_RESIDUAL,
    NonConvergence,
    find_roots,
    matching_distance,
    quadratic_orbit_roots,
    star_probe,
)
from .vieta import THEOREMS, InvalidSpec, derivative_spec, upsilon_psi, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly_output(poly: IntPolynomial, fmt: str) -> str:
    return (to_json(poly) if fmt == "json" else to_text(poly)) + "\n"


def run_gen(args) -> int:
    params = RBonacciParams(args.r, args.n)
    if args.mode == "recurrence":
        _emit(_poly_output(build_recurrence(params), args.format), args.out)
        return EXIT_OK
    closed = build_closed_form(params)
    if args.mode == "closed":
        _emit(_poly_output(closed, args.format), args.out)
        return EXIT_OK
    rec = build_recurrence(params)
    same = rec == closed
    text = _poly_output(rec, args.format)
    _emit(text, args.out)
    print(f"recurrence == closed-form: {'OK' if same else 'MISMATCH'}")
    if not same:
        print(f"closed form gives: {to_text(closed)}", file=sys.stderr)
    return EXIT_OK if same else EXIT_FAIL


def run_deriv(args) -> int:
    params = RBonacciParams(args.r, args.n)
    if args.t < 0:
        raise UsageError("--t must be non-negative")
    formal = formal_derivative(build_closed_form(params), args.t)
    if args.mode == "formal":
        _emit(_poly_output(formal, args.format), args.out)
        return EXIT_OK
    closed = build_derivative_closed_form(params, args.t)
    _emit(_poly_output(closed, args.format), args.out)
    if args.mode == "closed":
        return EXIT_OK
    same = formal == closed
    print(f"formal derivative == closed-form derivative: {'OK' if same else 'MISMATCH'}")
    return EXIT_OK if same else EXIT_FAIL


def _roots_target(args) -> tuple[IntPolynomial, str, object]:
    """Polynomial to solve, a title, and the closed-form roots if requested."""
    uses_spec = args.p is not None or args.k is not None
    if uses_spec and args.t is not None:
        raise UsageError("--t cannot be combined with --p/--k")
    if args.closed_form:
        if args.p is None:
            raise UsageError("--closed-form needs --p (and optionally --k)")
        closed = quadratic_orbit_roots(args.r, args.n, args.p)
        if args.k is not None and args.k != closed.spec.k:
            raise UsageError(
                f"--closed-form applies only to k = (r-1)n-2 = {closed.spec.k}, got --k {args.k}"
            )
        spec = closed.spec
    elif uses_spec:
        if args.p is None or args.k is None:
            raise UsageError("--p and --k must be given together")
        spec, closed = derivative_spec(args.r, args.n, args.p, args.k), None
    else:
        t = args.t or 0
        if t < 0:
            raise UsageError("--t must be non-negative")
        params = RBonacciParams(args.r, args.n)
        poly = build_derivative_closed_form(params, t)
        title = f"R_{args.n}" + (f"^({t})" if t else "") + f" (r={args.r})"
        return poly, title, None
    poly = build_derivative_closed_form(RBonacciParams(args.r, spec.index), spec.t)
    return poly, f"R_{spec.index}^({spec.t}) (r={args.r})", closed


def run_roots(args) -> int:
    poly, title, closed = _roots_target(args)
    if poly.degree < 1:
        raise UsageError(f"{title} has degree {poly.degree}; no zeros to find")
    rs = find_roots(poly, args.precision, r=args.r)
    extra = {}
    dist = None
    if closed is not None:
        dist = matching_distance(rs.expanded(), list(closed.roots))
        extra["closed_form"] = {
            "upsilon": rational_str(closed.upsilon),
            "psi": rational_str(closed.psi),
            "degenerate": closed.degenerate,
            "roots": [{"re": z.real, "im": z.imag} for z in closed.roots],
            "max_distance": dist,
        }
    if args.format == "csv":
        text = roots_to_csv(rs)
    elif args.format == "json":
        text = roots_to_json(rs, poly, **extra) + "\n"
    else:
        text = render_svg(rs, title)
    _emit(text, args.out)
    if dist is not None:
        line = f"max distance closed-form vs numeric: {dist:.3e}"
        print(line, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def run_verify(args) -> int:
    report = verify(args.theorem, r=args.r, n=args.n, p=args.p, k=args.k, t=args.t)
    text = report.to_json() if args.format == "json" else report.to_table()
    _emit(text + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def run_spec(args) -> int:
    spec = derivative_spec(args.r, args.n, args.p, args.k)
    upsilon, psi = upsilon_psi(spec)
    if args.format == "json":
        doc = {
            "r": spec.r, "n": spec.n, "p": spec.p, "k": spec.k,
            "index": spec.index, "t": spec.t, "eta": spec.eta, "mu": str(spec.mu),
            "upsilon": rational_str(upsilon), "psi": rational_str(psi),
        }
        text = json.dumps(doc, indent=2)
    else:
        text = (
            f"R_{spec.index}^({spec.t}) r={spec.r} n={spec.n} p={spec.p} k={spec.k}\n"
            f"t={spec.t} eta={spec.eta} mu={spec.mu} upsilon={Fraction(upsilon)} psi={Fraction(psi)}"
        )
    _emit(text + "\n", args.out)
    return EXIT_OK


def run_probe(args) -> int:
    rep = star_probe(args.r, args.n, args.p, args.precision)
    if args.format == "json":
        doc = {
            "r": rep.r, "n": rep.n, "p": rep.p, "degree": rep.degree,
            "orbit_count": rep.orbit_count, "zero_multiplicity": rep.zero_multiplicity,
            "max_residual": rep.max_residual,
            "branches": [
                {
                    "branch": b.index,
                    "angle": b.angle,
                    "innermost": {"re": b.innermost.real, "im": b.innermost.imag},
                    "innermost_y": {"re": b.innermost_y.real, "im": b.innermost_y.imag},
                    "distance": b.distance,
                    "nearest_y": {"re": b.nearest_y.real, "im": b.nearest_y.imag},
                    "nearest_distance": b.nearest_distance,
                }
                for b in rep.branches
            ],
        }
        text = json.dumps(doc, indent=2)
    else:
        idx = rep.r * rep.n + rep.p
        lines = [
            f"R_{idx} (r={rep.r}, n={rep.n}, p={rep.p}): degree {rep.degree}, "
            f"{rep.orbit_count} nonzero orbit{'' if rep.orbit_count == 1 else 's'}, zero multiplicity {rep.zero_multiplicity}, "
            f"max residual {rep.max_residual:.3e}"
        ]
        for b in rep.branches:
            lines.append(
                f"branch {b.index} (angle {b.angle:.6f}): innermost {_cfmt(b.innermost)}, "
                f"y = {_cfmt(b.innermost_y)}, distance to -1: {b.distance:.3e}; "
                f"nearest y to -1: {_cfmt(b.nearest_y)} ({b.nearest_distance:.3e})"
            )
        if not rep.branches:
            lines.append("no nonzero zeros")
        text = "\n".join(lines)
    _emit(text + "\n", args.out)
    return EXIT_OK


def _cfmt(z: complex) -> str:
    return f"{z.real:+.12f}{z.imag:+.12f}i"


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbzeros",
        description="R-Bonacci polynomials: build, differentiate, verify zero identities, find zeros.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--r", type=int, required=True, help="order of the recurrence (>= 2)")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write the artifact here instead of stdout")

    p = sub.add_parser("gen", help="print R_n")
    common(p, ("text", "json"), "text")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("recurrence", "closed", "both"), default="recurrence")
    p.set_defaults(func=run_gen)

    p = sub.add_parser("deriv", help="print the t-th derivative of R_n")
    common(p, ("text", "json"), "text")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=("formal", "closed", "both"), default="closed")
    p.set_defaults(func=run_deriv)

    p = sub.add_parser("roots", help="zeros of R_n, R_n^(t), or R_{rn+p}^(t) with t from (p, k)")
    common(p, ("csv", "json", "svg"), "csv")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--closed-form", action="store_true",
                   help="also evaluate the two-orbit closed form and compare")
    p.add_argument("--precision", type=_positive_float, default=DEFAULT_RESIDUAL,
                   help="residual target (default 1e-10)")
    p.set_defaults(func=run_roots)

    p = sub.add_parser("verify", help="check a zero identity exactly")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("spec", help="derivative parameters t, eta, mu, upsilon, psi")
    common(p, ("text", "json"), "text")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=run_spec)

    p = sub.add_parser("probe", help="branch geometry of the zeros of R_{rn+p}")
    common(p, ("text", "json"), "text")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--precision", type=_positive_float, default=DEFAULT_RESIDUAL)
    p.set_defaults(func=run_probe)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParams, InvalidSpec) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergence as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except RBonacciError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
