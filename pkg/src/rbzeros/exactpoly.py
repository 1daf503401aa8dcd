"""Dense univariate polynomials with exact integer coefficients.

Coefficients are stored low-to-high: ``coeffs[i]`` is the coefficient of x**i.
The zero polynomial has no coefficients at all.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import RBonacciError


class MixedResidueError(RBonacciError, ValueError):
    """Nonzero exponents fall into more than one residue class mod r."""


class InexactDivisionError(RBonacciError, ArithmeticError):
    pass


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"coefficients must be int, got {type(a).__name__}")
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * exponent + [coeff])

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> IntPolynomial:
        if not terms:
            return cls()
        c = [0] * (max(terms) + 1)
        for e, a in terms.items():
            c[e] += a
        return cls(c)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> float | int:
        """Index of the highest nonzero coefficient; ``-inf`` for zero."""
        return len(self._c) - 1 if self._c else -math.inf

    @property
    def leading(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, e: int) -> int:
        return self._c[e] if 0 <= e < len(self._c) else 0

    def support(self) -> list[int]:
        return [e for e, a in enumerate(self._c) if a]

    def content(self) -> int:
        return math.gcd(*self._c) if self._c else 0

    def primitive(self) -> IntPolynomial:
        """Divide out the content; leading coefficient made positive."""
        if not self._c:
            return self
        g = self.content()
        if self._c[-1] < 0:
            g = -g
        return IntPolynomial(a // g for a in self._c)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == _trim([other])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPolynomial", self._c))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"IntPolynomial({list(self._c)!r})"

    def __str__(self):
        return to_text(self)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-a for a in self._c)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPolynomial([1]), self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def __divmod__(self, other):
        return exact_divmod(self, _coerce(other))

    def __floordiv__(self, other):
        q, rem = exact_divmod(self, _coerce(other))
        if rem:
            raise InexactDivisionError(f"{other} does not divide {self}")
        return q

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by x**k."""
        if not self._c:
            return self
        return IntPolynomial((0,) * k + self._c)


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as IntPolynomial")


ZERO = IntPolynomial()
ONE = IntPolynomial([1])
X = IntPolynomial([0, 1])


def add(P: IntPolynomial, Q: IntPolynomial) -> IntPolynomial:
    a, b = P.coeffs, Q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return IntPolynomial(out)


def mul(P: IntPolynomial, Q: IntPolynomial) -> IntPolynomial:
    a, b = P.coeffs, Q.coeffs
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return IntPolynomial(out)


def formal_derivative(P: IntPolynomial, t: int = 1) -> IntPolynomial:
    """t-th formal derivative: x**e -> e(e-1)...(e-t+1) x**(e-t)."""
    if t < 0:
        raise ValueError("derivative order must be non-negative")
    c = P.coeffs
    return IntPolynomial(math.perm(e, t) * c[e] for e in range(t, len(c)))


def exact_divmod(A: IntPolynomial, B: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Division over the integers, valid when every quotient step is integral.

    Raises InexactDivisionError if some step would need a fraction; that
    never happens when B is monic or when B divides A and B is primitive.
    """
    if not B:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(A.coeffs)
    db, lb = len(B.coeffs) - 1, B.leading
    if len(rem) - 1 < db:
        return ZERO, A
    q = [0] * (len(rem) - db)
    bc = B.coeffs
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        qk, r = divmod(top, lb)
        if r:
            raise InexactDivisionError(f"leading coefficient {lb} does not divide {top}")
        q[k] = qk
        for i, b in enumerate(bc):
            rem[k + i] -= qk * b
    return IntPolynomial(q), IntPolynomial(rem)


def pseudo_remainder(A: IntPolynomial, B: IntPolynomial) -> IntPolynomial:
    """prem(A, B) = lc(B)**(deg A - deg B + 1) * A mod B, in Z[x]."""
    rem = list(A.coeffs)
    bc = B.coeffs
    db, lb = len(bc) - 1, bc[-1]
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lb * a for a in rem]
        for i, b in enumerate(bc):
            rem[shift + i] -= top * b
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return IntPolynomial(rem)


def gcd(A: IntPolynomial, B: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[x], positive leading coefficient.

    Content and primitive part are handled separately; the primitive
    part comes from a primitive remainder sequence: every pseudo-remainder is reduced to its
    primitive part before the next step, which keeps coefficients small.
    """
    if not A:
        return B if B.leading >= 0 else -B
    if not B:
        return A if A.leading >= 0 else -A
    ca, cb = A.content(), B.content()
    a, b = A.primitive(), B.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    g = a.primitive()
    return g * math.gcd(ca, cb)


def squarefree_decomposition(P: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun-style split P = c * prod f_i**i with pairwise coprime square-free f_i.

    Returns the nonconstant factors as (primitive f_i, i) pairs, i ascending.
    """
    if not P:
        raise ValueError("square-free decomposition of the zero polynomial")
    out = []
    c = gcd(P, formal_derivative(P)).primitive()
    w = P.primitive() // c
    i = 1
    while c.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if w.degree > 0:
        out.append((w, i))
    return out


def square_free_part(P: IntPolynomial) -> IntPolynomial:
    """P / gcd(P, P'), made primitive."""
    if not P:
        raise ValueError("square-free part of the zero polynomial")
    if P.degree < 1:
        return ONE
    return (P.primitive() // gcd(P, formal_derivative(P)).primitive()).primitive()


def _dyadic(x: float) -> tuple[int, int]:
    num, den = x.as_integer_ratio()
    return num, den.bit_length() - 1


def _gaussian_horner(coeffs: Sequence[int], z: complex) -> tuple[int, int, int]:
    """Exact P(z) for a float complex z, as (re, im, e) meaning (re + i*im) / 2**e."""
    a, ea = _dyadic(z.real)
    b, eb = _dyadic(z.imag)
    e = max(ea, eb)
    a <<= e - ea
    b <<= e - eb
    re = im = 0
    scale = 1
    for c in reversed(coeffs):
        re, im = re * a - im * b + c * scale, re * b + im * a
        scale <<= e
    # after d+1 coefficients the common denominator is 2**(e*d)
    d = len(coeffs) - 1
    return re, im, e * d


def _to_float(num: int, den: int) -> float:
    try:
        return num / den
    except OverflowError:
        return math.copysign(math.inf, num)


def evaluate(P: IntPolynomial, z: complex, monic: bool = False) -> complex:
    """P(z) computed exactly at the float point z, then rounded once.

    With ``monic=True`` the value of P / lc(P) is returned; the division is
    exact too, so huge leading coefficients do not cost precision.
    """
    if not P:
        return 0j
    z = complex(z)
    re, im, e = _gaussian_horner(P.coeffs, z)
    den = 1 << e
    if monic:
        lc = P.leading
        if lc < 0:
            re, im, lc = -re, -im, -lc
        den *= lc
    return complex(_to_float(re, den), _to_float(im, den))


def newton_ratio(P: IntPolynomial, dP: IntPolynomial, z: complex) -> complex:
    """P(z) / P'(z) evaluated exactly at z and rounded once."""
    re, im, e = _gaussian_horner(P.coeffs, z)
    dre, dim, de = _gaussian_horner(dP.coeffs, z) if dP else (0, 0, 0)
    if dre == 0 and dim == 0:
        return complex(math.inf, 0)
    # (re + i im) 2**-e / ((dre + i dim) 2**-de)
    nr = re * dre + im * dim
    ni = im * dre - re * dim
    den = (dre * dre + dim * dim) << e
    nr <<= de
    ni <<= de
    return complex(_to_float(nr, den), _to_float(ni, den))


def evaluate_rational(P: IntPolynomial, x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


class DecimatedForm(NamedTuple):
    """P(x) = x**shift * base(x**modulus)."""

    shift: int
    base: IntPolynomial
    modulus: int

    def reconstruct(self) -> IntPolynomial:
        c = self.base.coeffs
        if not c:
            return ZERO
        out = [0] * ((len(c) - 1) * self.modulus + 1)
        for i, a in enumerate(c):
            out[i * self.modulus] = a
        return IntPolynomial(out).shift(self.shift)


def decimate(P: IntPolynomial, r: int) -> DecimatedForm:
    if r < 2:
        raise ValueError("decimation modulus must be at least 2")
    exps = P.support()
    if not exps:
        return DecimatedForm(0, ZERO, r)
    s = exps[0] % r
    for e in exps:
        if e % r != s:
            raise MixedResidueError(
                f"exponents {exps[0]} and {e} differ mod {r}"
            )
    c = P.coeffs
    return DecimatedForm(s, IntPolynomial(c[s::r]), r)


def star_modulus(P: IntPolynomial) -> int:
    """Largest r such that all nonzero exponents share one residue mod r.

    0 when P has at most one term (every r works).
    """
    exps = P.support()
    return math.gcd(*(e - exps[0] for e in exps[1:])) if len(exps) > 1 else 0


# --- serialization ---

def to_json(P: IntPolynomial) -> str:
    return json.dumps([str(a) for a in P.coeffs])


def from_json(text: str) -> IntPolynomial:
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        raise ValueError("expected a JSON array of decimal strings")
    return IntPolynomial(int(s) for s in data)


def to_text(P: IntPolynomial, var: str = "x") -> str:
    """Human form, highest power first: ``x^20 + 4x^15 + 6x^10 + 4x^5 + 1``."""
    if not P:
        return "0"
    parts = []
    for e in range(len(P.coeffs) - 1, -1, -1):
        a = P.coeffs[e]
        if a == 0:
            continue
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            power = var if e == 1 else f"{var}^{e}"
            body = power if mag == 1 else f"{mag}{power}"
        if not parts:
            parts.append(body if a > 0 else f"-{body}")
        else:
            parts.append(("+ " if a > 0 else "- ") + body)
    return " ".join(parts)
