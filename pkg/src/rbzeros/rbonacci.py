"""R-Bonacci polynomials, r-nomial coefficients and the Lucas cross-check."""

from __future__ import annotations

import math
import threading
from collections import deque
from dataclasses import dataclass

from .errors import RBonacciError
from .exactpoly import ONE, X, ZERO, IntPolynomial, formal_derivative, to_json
from .report import VerificationReport, coefficient_rows


class InvalidParams(RBonacciError, ValueError):
    pass


@dataclass(frozen=True)
class RBonacciParams:
    r: int
    n: int

    def __post_init__(self):
        if self.r < 2:
            raise InvalidParams(f"order r must be >= 2, got {self.r}")
        if self.n < 1:
            raise InvalidParams(f"index n must be >= 1, got {self.n}")

    @property
    def degree(self) -> int:
        return (self.r - 1) * (self.n - 1)


class RnomialTable:
    """Rows of (1 + x + ... + x**(r-1))**n, built on demand and cached.

    Reads of already-built rows take no lock; extending the table does.
    """

    def __init__(self, r: int):
        if r < 2:
            raise InvalidParams(f"r-nomial order must be >= 2, got {r}")
        self.r = r
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError("row index must be non-negative")
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(self._rows) <= n:
                self._rows.append(self._next(self._rows[-1]))
            return self._rows[n]

    def _next(self, prev: tuple[int, ...]) -> tuple[int, ...]:
        # sliding-window sum over r consecutive entries of the previous row
        r = self.r
        out = []
        window = 0
        for j in range(len(prev) + r - 1):
            if j < len(prev):
                window += prev[j]
            if j >= r:
                window -= prev[j - r]
            out.append(window)
        return tuple(out)

    def __call__(self, n: int, j: int) -> int:
        if n < 0 or j < 0 or j > n * (self.r - 1):
            return 0
        return self.row(n)[j]


_tables: dict[int, RnomialTable] = {}
_tables_lock = threading.Lock()


def rnomial_table(r: int) -> RnomialTable:
    table = _tables.get(r)
    if table is None:
        with _tables_lock:
            table = _tables.setdefault(r, RnomialTable(r))
    return table


def rnomial(r: int, n: int, j: int) -> int:
    """Coefficient of x**j in (1 + x + ... + x**(r-1))**n; 0 outside the row."""
    return rnomial_table(r)(n, j)


def build_recurrence(params: RBonacciParams) -> IntPolynomial:
    """R_n by iterating R_{m+r} = sum_i x**i R_{m+i}, keeping only r terms."""
    r, n = params.r, params.n
    if n == 1:
        return ONE
    # window holds R_{m-r+1} .. R_m; start at m = 2 with R_{-(r-3)}..R_0 = 0, R_1, R_2
    window = deque([ZERO] * (r - 2) + [ONE, IntPolynomial.monomial(r - 1)], maxlen=r)
    for _ in range(n - 2):
        nxt = ZERO
        for i, poly in enumerate(window):
            nxt = nxt + poly.shift(i)
        window.append(nxt)
    return window[-1]


def closed_form_terms(r: int, n: int):
    """(j, coefficient, exponent) triples of the explicit r-nomial sum for R_n."""
    top = (r - 1) * (n - 1)
    for j in range(top // r + 1):
        yield j, rnomial(r, n - j - 1, j), top - r * j


def build_closed_form(params: RBonacciParams) -> IntPolynomial:
    return IntPolynomial.from_terms(
        {e: c for _, c, e in closed_form_terms(params.r, params.n)}
    )


def build_derivative_closed_form(params: RBonacciParams, t: int) -> IntPolynomial:
    """t-th derivative of R_n straight from the r-nomial sum.

    Terms whose exponent would go negative are dropped (their falling
    factorial vanishes anyway).
    """
    if t < 0:
        raise InvalidParams(f"derivative order must be >= 0, got {t}")
    terms = {}
    for _, c, e in closed_form_terms(params.r, params.n):
        if e >= t and c:
            terms[e - t] = c * math.perm(e, t)
    return IntPolynomial.from_terms(terms)


def rbonacci(r: int, n: int, t: int = 0) -> IntPolynomial:
    """Convenience: R_n (or its t-th derivative) for order r."""
    params = RBonacciParams(r, n)
    if t:
        return build_derivative_closed_form(params, t)
    return build_closed_form(params)


def lucas(n: int) -> IntPolynomial:
    """Lucas polynomial L_n: L_0 = 2, L_1 = x, L_{m+1} = x L_m + L_{m-1}."""
    if n < 0:
        raise InvalidParams("Lucas index must be non-negative")
    prev, cur = IntPolynomial([2]), X
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, X * cur + prev
    return cur


def fibonacci(n: int) -> IntPolynomial:
    return build_recurrence(RBonacciParams(2, n))


def lucas_identity_sides(n: int, t: int) -> tuple[IntPolynomial, IntPolynomial]:
    """(L_n^(t), n * F_n^(t-1)); equal for every n >= 1, t >= 1."""
    if n < 1 or t < 1:
        raise InvalidParams(f"Lucas identity needs n >= 1 and t >= 1, got n={n}, t={t}")
    return formal_derivative(lucas(n), t), n * formal_derivative(fibonacci(n), t - 1)


def lucas_identity_check(n: int, t: int) -> VerificationReport:
    lhs, rhs = lucas_identity_sides(n, t)
    return VerificationReport(
        theorem="lucas",
        params={"n": n, "t": t},
        rows=tuple(coefficient_rows(rhs, lhs, label="coeff")),
        extra={"lhs": to_json(lhs), "rhs": to_json(rhs)},
    )
