"""Symmetric functions of r-th powers of zeros, predicted vs. read off.

Every comparison here is an exact identity between rationals: the
polynomial is decimated to Q(y), y = x**r, and Vieta turns Q's
coefficients into the elementary symmetric functions of its roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import RBonacciError
from .exactpoly import IntPolynomial, decimate, to_json
from .rbonacci import (
    RBonacciParams,
    build_derivative_closed_form,
    build_recurrence,
    lucas_identity_check,
    rnomial,
)
from .report import Row, VerificationReport, coefficient_rows


class InvalidSpec(RBonacciError, ValueError):
    """Derivative parameters for which the symmetric-function formula does not apply."""


class IndexOutOfRange(RBonacciError, IndexError):
    pass


class ZeroPolynomial(RBonacciError, ValueError):
    pass


def elementary_symmetric_from_poly(Q: IntPolynomial) -> list[Fraction]:
    """sigma_j = (-1)**j * q_{d-j} / q_d for j = 0..d."""
    if not Q:
        raise ZeroPolynomial("Vieta needs a nonzero polynomial")
    c, d = Q.coeffs, len(Q.coeffs) - 1
    lead = c[d]
    return [Fraction((-1) ** j * c[d - j], lead) for j in range(d + 1)]


def base_eta(r: int, n: int, p: int) -> int:
    """Number of reference zeros of R_{rn+p}, p in {0, 1}."""
    return (r - 1) * n - 1 + p


def expected_sigma_theorem12(r: int, n: int, p: int, j: int) -> Fraction:
    if p not in (0, 1):
        raise InvalidSpec(f"base theorems cover p in {{0, 1}}, got p={p}")
    if not 0 <= j <= base_eta(r, n, p):
        raise IndexOutOfRange(f"j={j} outside 0..{base_eta(r, n, p)}")
    return Fraction((-1) ** j * rnomial(r, r * n + p - j - 1, j))


@dataclass(frozen=True)
class DerivativeSpec:
    r: int
    n: int
    p: int
    k: int
    t: int
    eta: int
    mu: int

    @property
    def index(self) -> int:
        return self.r * self.n + self.p

    @property
    def top_exponent(self) -> int:
        """Degree of R_{rn+p} before differentiating."""
        return (self.r - 1) * (self.index - 1)


def derivative_spec(r: int, n: int, p: int, k: int) -> DerivativeSpec:
    if r < 2 or n < 1:
        raise InvalidSpec(f"need r >= 2 and n >= 1, got r={r}, n={n}")
    if not 0 <= p <= r - 1:
        raise InvalidSpec(f"p must lie in 0..{r - 1}, got {p}")
    if k < 1:
        raise InvalidSpec(f"k must be positive, got {k}")
    t = r * k - (1 - p) * (r - 1)
    eta = (r - 1) * n - k
    if t < 1:
        raise InvalidSpec(f"derivative order t={t} < 1")
    if eta < 1:
        raise InvalidSpec(f"eta={eta} < 1: no reference zeros")
    mu = math.perm((r - 1) * (r * n + p - 1), t)
    return DerivativeSpec(r, n, p, k, t, eta, mu)


def _theorem4_factor(spec: DerivativeSpec, j: int) -> int:
    return math.perm(spec.top_exponent - spec.r * j, spec.t)


def expected_sigma_theorem4(spec: DerivativeSpec, j: int) -> Fraction:
    if not 0 <= j <= spec.eta:
        raise IndexOutOfRange(f"j={j} outside 0..{spec.eta}")
    num = (-1) ** j * _theorem4_factor(spec, j) * rnomial(spec.r, spec.index - j - 1, j)
    return Fraction(num, spec.mu)


def upsilon_psi(spec: DerivativeSpec) -> tuple[Fraction, Fraction]:
    """(product, sum) of the r-th powers of the reference zeros.

    Both are written out in their stand-alone closed forms rather than
    read from expected_sigma_theorem4, so the two routes check each other.
    """
    r, t, eta, idx = spec.r, spec.t, spec.eta, spec.index
    upsilon = Fraction((-1) ** eta * math.factorial(t) * rnomial(r, idx - eta - 1, eta), spec.mu)
    psi = -Fraction(math.perm(spec.top_exponent - r, t) * rnomial(r, idx - 2, 1), spec.mu)
    return upsilon, psi


def _sigma_rows(sigma, expected, labels) -> tuple[Row, ...]:
    rows = []
    for j in range(max(len(sigma), len(expected))):
        rows.append(Row(
            j,
            expected[j] if j < len(expected) else None,
            sigma[j] if j < len(sigma) else None,
            labels.get(j, ""),
        ))
    return tuple(rows)


def verify_theorem12(r: int, n: int, p: int) -> VerificationReport:
    params = RBonacciParams(r, r * n + p)
    poly = build_recurrence(params)
    form = decimate(poly, r)
    sigma = elementary_symmetric_from_poly(form.base)
    eta = base_eta(r, n, p)
    expected = [expected_sigma_theorem12(r, n, p, j) for j in range(eta + 1)]
    power_sum = "sum of r-th powers" if eta >= 1 else ""
    return VerificationReport(
        theorem="t1" if p == 0 else "t2",
        params={"r": r, "n": n, "p": p},
        rows=_sigma_rows(sigma, expected, {1: power_sum} if power_sum else {}),
        extra={"polynomial": to_json(poly), "shift": form.shift},
    )


def verify_theorem4(r: int, n: int, p: int, k: int) -> VerificationReport:
    spec = derivative_spec(r, n, p, k)
    poly = build_derivative_closed_form(RBonacciParams(r, spec.index), spec.t)
    form = decimate(poly, r)
    sigma = elementary_symmetric_from_poly(form.base)
    expected = [expected_sigma_theorem4(spec, j) for j in range(spec.eta + 1)]
    upsilon, psi = upsilon_psi(spec)
    labels = {1: "sum of r-th powers (psi)"}
    labels[spec.eta] = "product of r-th powers (upsilon)" if spec.eta > 1 else "sum = product"
    return VerificationReport(
        theorem="t4",
        params={"r": r, "n": n, "p": p, "k": k, "t": spec.t, "eta": spec.eta},
        rows=_sigma_rows(sigma, expected, labels),
        extra={
            "mu": str(spec.mu),
            "upsilon": f"{upsilon.numerator}/{upsilon.denominator}",
            "psi": f"{psi.numerator}/{psi.denominator}",
            "shift": form.shift,
            "polynomial": to_json(poly),
        },
    )


def nomial_factorizations(r: int) -> list[tuple[str, IntPolynomial, IntPolynomial]]:
    """(label, R built by recurrence, claimed factored form) for the n = 1 cases."""
    star = IntPolynomial.monomial(r) + 1
    return [
        (f"R_{r}", build_recurrence(RBonacciParams(r, r)), (star ** (r - 2)).shift(1)),
        (f"R_{r + 1}", build_recurrence(RBonacciParams(r, r + 1)), star ** (r - 1)),
    ]


def verify_theorem8(r: int) -> VerificationReport:
    """R_r = x (x^r + 1)^(r-2) and R_{r+1} = (x^r + 1)^(r-1), coefficientwise."""
    if r < 2:
        raise InvalidSpec(f"need r >= 2, got {r}")
    rows = []
    for label, built, claimed in nomial_factorizations(r):
        rows.extend(coefficient_rows(claimed, built, label))
    return VerificationReport(theorem="t8", params={"r": r}, rows=tuple(rows))


REQUIRED = {
    "t1": ("r", "n"),
    "t2": ("r", "n"),
    "t4": ("r", "n", "p", "k"),
    "t8": ("r",),
    "lucas": ("n", "t"),
}
THEOREMS = tuple(REQUIRED)


def verify(theorem: str, r: int | None = None, n: int | None = None,
           p: int | None = None, k: int | None = None, t: int | None = None) -> VerificationReport:
    """Dispatch on a theorem tag: t1, t2, t4, t8 or lucas."""
    theorem = theorem.lower()
    if theorem not in REQUIRED:
        raise InvalidSpec(f"unknown theorem tag {theorem!r}")
    given = {"r": r, "n": n, "p": p, "k": k, "t": t}
    missing = [name for name in REQUIRED[theorem] if given[name] is None]
    if missing:
        raise InvalidSpec(f"{theorem} needs {', '.join(missing)}")
    if theorem in ("t1", "t2"):
        return verify_theorem12(r, n, 0 if theorem == "t1" else 1)
    if theorem == "t4":
        return verify_theorem4(r, n, p, k)
    if theorem == "t8":
        return verify_theorem8(r)
    return lucas_identity_check(n, t)
