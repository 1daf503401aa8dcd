"""Complex zeros: numeric solver, closed-form quadratic orbits, star geometry."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import RBonacciError
from .exactpoly import (
    IntPolynomial,
    evaluate,
    squarefree_decomposition,
    star_modulus,
)
from .rbonacci import InvalidParams, RBonacciParams, build_closed_form
from .vieta import DerivativeSpec, derivative_spec, upsilon_psi

DEFAULT_RESIDUAL = 1e-10
ORBIT_RTOL = 1e-8
ORBIT_ATOL = 1e-8
GOLDEN = (math.sqrt(5) - 1) / 2
EPS = np.finfo(float).eps


class NonConvergence(RBonacciError, ArithmeticError):
    def __init__(self, message: str, best_residual: float):
        super().__init__(f"{message} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


class OrbitIncomplete(RBonacciError, ValueError):
    pass


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class ComplexRootSet:
    roots: tuple[Root, ...]
    orbit_ids: tuple[int, ...]
    r: int
    degree: int

    @property
    def values(self) -> list[complex]:
        return [root.value for root in self.roots]

    def expanded(self) -> list[complex]:
        """Root values repeated by multiplicity."""
        return [root.value for root in self.roots for _ in range(root.multiplicity)]

    def orbits(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, oid in enumerate(self.orbit_ids):
            out.setdefault(oid, []).append(i)
        return out

    @property
    def max_residual(self) -> float:
        return max((root.residual for root in self.roots), default=0.0)


# --- the solver ---

def residual(P: IntPolynomial, z: complex) -> float:
    """|P(z) / lc(P)| / max(1, |z|)**deg."""
    value = abs(evaluate(P, z, monic=True))
    scale = max(1.0, abs(z))
    if scale == 1.0:
        return value
    return math.exp(math.log(value) - P.degree * math.log(scale)) if value else 0.0


def _monic_floats(f: IntPolynomial) -> np.ndarray:
    """Coefficients of f / lc(f), highest power first."""
    lc = f.leading
    return np.array([float(Fraction(c, lc)) for c in reversed(f.coeffs)], dtype=complex)


def _upper_hull(points: list[tuple[int, float]]) -> list[tuple[int, float]]:
    hull: list[tuple[int, float]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _initial_guesses(f: IntPolynomial) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of f.

    Each upper-hull edge of (i, log|c_i|) from i=a to i=b contributes b-a
    points on a circle of radius (|c_a|/|c_b|)**(1/(b-a)). Angles carry a
    golden-ratio jitter so the start does not share the polynomial's
    rotational symmetry.
    """
    pts = [(i, math.log(abs(c))) for i, c in enumerate(f.coeffs) if c]
    hull = _upper_hull(pts)
    d = f.degree
    out = []
    for (a, la), (b, lb) in zip(hull, hull[1:]):
        m = b - a
        radius = math.exp((la - lb) / m)
        for k in range(m):
            jitter = 0.5 * ((len(out) * GOLDEN) % 1.0)
            theta = 2 * math.pi * (k + jitter) / m + 2 * math.pi * a / d + 0.4
            out.append(cmath.rect(radius, theta))
    return np.array(out, dtype=complex)


def _newton_ratios(desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    """p(z)/p'(z) in floats, evaluating the reversed polynomial outside the unit disc."""
    d = len(desc) - 1
    out = np.empty_like(z)
    inner = np.abs(z) <= 1
    if inner.any():
        zi = z[inner]
        p = np.full_like(zi, desc[0])
        dp = np.zeros_like(zi)
        for c in desc[1:]:
            dp = dp * zi + p
            p = p * zi + c
        out[inner] = p / dp
    outer = ~inner
    if outer.any():
        zo = z[outer]
        u = 1 / zo
        rev = desc[::-1]
        q = np.full_like(u, rev[0])
        dq = np.zeros_like(u)
        for c in rev[1:]:
            dq = dq * u + q
            q = q * u + c
        # p'/p = (d - u q'/q) / z
        out[outer] = zo / (d - u * dq / q)
    return out


def _aberth_step(z: np.ndarray, ratio: np.ndarray) -> np.ndarray:
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    inv = 1.0 / diff
    np.fill_diagonal(inv, 0.0)
    s = inv.sum(axis=1)
    return ratio / (1 - ratio * s)


class _PreciseRatio:
    """p(z)/p'(z) at a float point z, in enough working precision to be exact to ~53 bits.

    Horner's rounding error is bounded by about 2d * 2**-prec * S(z) with
    S(z) = sum |c_i| |z|**i. Precision starts from that bound and doubles
    until the error is negligible against |p'(z) z| * 2**-60.
    """

    def __init__(self, f: IntPolynomial):
        self.desc = [gmpy2.mpz(c) for c in reversed(f.coeffs)]
        self.d = len(self.desc) - 1
        nz = [(i, c) for i, c in enumerate(f.coeffs) if c]
        self.exps = np.array([i for i, _ in nz], dtype=float)
        self.logc = np.array([math.log2(abs(c)) for _, c in nz])

    def log2_scale(self, z: complex) -> float:
        az = abs(z)
        if az == 0:
            return float(self.logc[0]) if self.exps[0] == 0 else -math.inf
        terms = self.logc + self.exps * math.log2(az)
        top = terms.max()
        return float(top + np.log2(np.exp2(terms - top).sum()))

    def __call__(self, z: complex) -> complex:
        log_s = self.log2_scale(z)
        prec = max(128, 53 + 64 + math.ceil(log_s))
        while True:
            with gmpy2.context(gmpy2.get_context(), precision=prec, real_prec=prec, imag_prec=prec):
                zz = gmpy2.mpc(z)
                p = gmpy2.mpc(0)
                dp = gmpy2.mpc(0)
                for c in self.desc:
                    dp = dp * zz + p
                    p = p * zz + c
                if dp == 0:
                    return complex(math.inf, 0)
                err_log = math.log2(2 * self.d + 2) - prec + log_s
                scale = abs(dp) * max(abs(zz), 2 ** -1074)
                if scale == 0 or err_log > math.log2(scale) - 60:
                    if prec >= 1 << 15:
                        return complex(p / dp)
                    prec *= 2
                    continue
                return complex(p / dp)


def _float_aberth(desc: np.ndarray, z: np.ndarray, max_iter: int) -> np.ndarray:
    best = math.inf
    stall = 0
    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            w = _aberth_step(z, _newton_ratios(desc, z))
            w = np.where(np.isfinite(w), w, 0)
            z = z - w
            size = float(np.max(np.abs(w) / np.maximum(1.0, np.abs(z))))
            if size <= 4 * EPS:
                break
            # float evaluation can be pure noise for ill-conditioned inputs
            if size < 0.5 * best:
                best, stall = size, 0
            else:
                stall += 1
                if stall >= 25:
                    break
    return z


def _precise_aberth(ratio_fn, z: np.ndarray, max_iter: int) -> np.ndarray:
    """Gauss-Seidel Aberth sweeps; a zero stops moving once its step is at rounding level."""
    z = np.array(z, dtype=complex)
    active = list(range(len(z)))
    for _ in range(max_iter):
        still = []
        for i in active:
            ratio = ratio_fn(complex(z[i]))
            if ratio == 0:
                continue
            diff = z[i] - np.delete(z, i)
            with np.errstate(all="ignore"):
                s = np.sum(1.0 / diff)
                w = ratio / (1 - ratio * s)
            if not cmath.isfinite(w):
                w = ratio if cmath.isfinite(ratio) else 0j
            z[i] -= w
            if abs(w) > 4 * EPS * max(1.0, abs(z[i])):
                still.append(i)
        active = still
        if not active:
            break
    return z


def _solve_squarefree(f: IntPolynomial, max_iter: int) -> list[complex]:
    roots: list[complex] = []
    if f.coeff(0) == 0:
        roots.append(0j)
        f = IntPolynomial(f.coeffs[1:])
    d = f.degree
    if d < 1:
        return roots
    if d == 1:
        roots.append(complex(float(Fraction(-f.coeff(0), f.coeff(1)))))
        return roots
    desc = _monic_floats(f)
    z = _initial_guesses(f)
    z = _float_aberth(desc, z, max_iter)
    z = _precise_aberth(_PreciseRatio(f), z, max_iter)
    roots.extend(complex(v) for v in z)
    return roots


def find_roots(P: IntPolynomial, target_residual: float = DEFAULT_RESIDUAL,
               r: int | None = None, max_iter: int = 500) -> ComplexRootSet:
    """All complex zeros of P with exact multiplicities.

    Each square-free factor from the exact gcd chain is solved separately,
    so a zero's multiplicity is the exponent of the factor it came from.
    ``r`` is the rotation order used for orbit grouping; by default it is
    read off P's exponent support.
    """
    if not P or P.degree < 1:
        raise ValueError("find_roots needs a polynomial of degree >= 1")
    if r is None:
        r = max(star_modulus(P), 1)

    found = []
    for factor, mult in squarefree_decomposition(P):
        for z in _solve_squarefree(factor, max_iter):
            found.append(Root(z, mult, residual(P, z)))

    worst = max(root.residual for root in found)
    if not worst <= target_residual or not all(cmath.isfinite(root.value) for root in found):
        raise NonConvergence(f"residual target {target_residual:g} not reached", worst)

    orbit_of = group_orbits([root.value for root in found], [root.multiplicity for root in found], r)
    # deterministic layout: orbit by orbit, each orbit in rotation order
    order = sorted(range(len(found)), key=lambda i: (orbit_of[i][0], orbit_of[i][1]))
    return ComplexRootSet(
        roots=tuple(found[i] for i in order),
        orbit_ids=tuple(orbit_of[i][0] for i in order),
        r=r,
        degree=int(P.degree),
    )


def _arg(z: complex) -> float:
    # cmath.phase raises on a subnormal result (e.g. 26 + 5e-324j); atan2 does not
    return math.atan2(z.imag, z.real)


def _arg_gap(a: float, b: float) -> float:
    return abs(math.remainder(a - b, 2 * math.pi))


def group_orbits(values: list[complex], mults: list[int], r: int,
                 rtol: float = ORBIT_RTOL, atol: float = ORBIT_ATOL) -> list[tuple[int, int]]:
    """Assign each value an (orbit id, position) under rotation by 2*pi/r.

    Two values share an orbit when their moduli agree to ``rtol`` and their
    arguments differ by a multiple of 2*pi/r to within ``atol``. Orbit 0 is
    reserved for the zero root. Orbits are numbered by increasing modulus of
    their members.
    """
    n = len(values)
    result: list[tuple[int, int] | None] = [None] * n
    step = 2 * math.pi / r
    keyed = sorted(range(n), key=lambda i: (abs(values[i]), _window_distance(values[i], r)))
    next_id = 1
    for i in keyed:
        if result[i] is not None:
            continue
        z = values[i]
        if z == 0:
            result[i] = (0, 0)
            continue
        members = [i]
        for k in range(1, r):
            target_arg = _arg(z) + k * step
            best, best_gap = None, None
            for j in keyed:
                if result[j] is not None or j in members or mults[j] != mults[i] or values[j] == 0:
                    continue
                if abs(abs(values[j]) - abs(z)) > rtol * abs(z):
                    continue
                gap = _arg_gap(_arg(values[j]), target_arg)
                if gap <= atol and (best is None or gap < best_gap):
                    best, best_gap = j, gap
            if best is not None:
                members.append(best)
        # position 0 is the member in the canonical window
        start = min(range(len(members)), key=lambda m: _window_distance(values[members[m]], r))
        for pos, m in enumerate(members[start:] + members[:start]):
            result[m] = (next_id, pos)
        next_id += 1
    return result


def _window_distance(z: complex, r: int) -> float:
    """How far below pi the argument of z sits, mod 2*pi; < 2*pi/r inside the window."""
    return (math.pi - _arg(z)) % (2 * math.pi)


# --- reference zeros ---

@dataclass(frozen=True)
class ReferenceRoots:
    representatives: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    rule: str


def reference_roots(rs: ComplexRootSet) -> ReferenceRoots:
    """One zero per nonzero orbit, the one with argument in (pi - 2pi/r, pi]."""
    reps, mults = [], []
    for oid, members in sorted(rs.orbits().items()):
        if oid == 0:
            continue
        if len(members) != rs.r:
            raise OrbitIncomplete(
                f"orbit {oid} has {len(members)} members, expected {rs.r}"
            )
        first = min(members, key=lambda i: _window_distance(rs.roots[i].value, rs.r))
        reps.append(rs.roots[first].value)
        mults.append(rs.roots[first].multiplicity)
    return ReferenceRoots(tuple(reps), tuple(mults), f"arg in (pi - 2pi/{rs.r}, pi]")


def rotation_closure_defect(rs: ComplexRootSet) -> float:
    """Largest relative distance from z * e^(2 pi i / r) to a root of equal multiplicity."""
    w = cmath.exp(2j * math.pi / rs.r)
    worst = 0.0
    for root in rs.roots:
        if root.value == 0:
            continue
        target = root.value * w
        gap = min(
            abs(other.value - target)
            for other in rs.roots
            if other.multiplicity == root.multiplicity
        )
        worst = max(worst, gap / abs(root.value))
    return worst


# --- closed-form zeros for the eta = 2 family ---

@dataclass(frozen=True)
class ClosedFormRoots:
    spec: DerivativeSpec
    upsilon: Fraction
    psi: Fraction
    y_plus: complex
    y_minus: complex
    roots: tuple[complex, ...]
    degenerate: bool = False


def quadratic_spec(r: int, n: int, p: int) -> DerivativeSpec:
    """The derivative order that leaves exactly two reference zeros."""
    return derivative_spec(r, n, p, (r - 1) * n - 2)


def _quadratic_pair(psi: Fraction, upsilon: Fraction) -> tuple[complex, complex]:
    """Roots (y+, y-) of y**2 - psi*y + upsilon, avoiding cancellation."""
    disc = psi * psi - 4 * upsilon
    if disc < 0:
        sq = 1j * math.sqrt(float(-disc))
        return (float(psi) + sq) / 2, (float(psi) - sq) / 2
    sq = math.sqrt(float(disc))
    if psi >= 0:
        big = (float(psi) + sq) / 2
        small = float(upsilon) / big if big else 0.0
        return complex(big), complex(small)
    big = (float(psi) - sq) / 2
    small = float(upsilon) / big if big else 0.0
    return complex(small), complex(big)


def rth_roots(y: complex, r: int) -> list[complex]:
    if y == 0:
        return [0j] * r
    mod = abs(y) ** (1.0 / r)
    arg = _arg(y)
    return [cmath.rect(mod, (arg + 2 * math.pi * k) / r) for k in range(r)]


def quadratic_orbit_roots(r: int, n: int, p: int) -> ClosedFormRoots:
    spec = quadratic_spec(r, n, p)
    upsilon, psi = upsilon_psi(spec)
    y_plus, y_minus = _quadratic_pair(psi, upsilon)
    roots = tuple(rth_roots(y_plus, r) + rth_roots(y_minus, r))
    return ClosedFormRoots(
        spec, upsilon, psi, y_plus, y_minus, roots,
        degenerate=psi * psi == 4 * upsilon,
    )


def matching_distance(a: list[complex], b: list[complex]) -> float:
    """Largest pair distance under the minimum-total-distance pairing of a and b."""
    if len(a) != len(b):
        return math.inf
    if not a:
        return 0.0
    cost = np.abs(np.subtract.outer(np.array(a), np.array(b)))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


# --- conjecture probe ---

@dataclass(frozen=True)
class Branch:
    index: int
    angle: float
    innermost: complex
    innermost_y: complex
    distance: float
    nearest_y: complex
    nearest_distance: float


@dataclass(frozen=True)
class StarProbeReport:
    r: int
    n: int
    p: int
    degree: int
    orbit_count: int
    branches: tuple[Branch, ...]
    max_residual: float
    zero_multiplicity: int = 0

    @property
    def min_distance(self) -> float:
        return min((b.distance for b in self.branches), default=math.nan)


def star_probe(r: int, n: int, p: int, target_residual: float = DEFAULT_RESIDUAL) -> StarProbeReport:
    """Where the zero branches of R_{rn+p} start relative to the zeros of x**r + 1.

    Branch b is the sector of angular width 2*pi/r centred on the ray
    through e^{i(2b+1)pi/r}. Purely descriptive; nothing is asserted.
    """
    if not 0 <= p <= r - 1:
        raise InvalidParams(f"p must lie in 0..{r - 1}, got {p}")
    poly = build_closed_form(RBonacciParams(r, r * n + p))
    if poly.degree < 1:
        raise InvalidParams(f"R_{r * n + p} is constant; nothing to probe")
    rs = find_roots(poly, target_residual, r=r)

    sectors: dict[int, list[complex]] = {}
    zero_mult = 0
    step = 2 * math.pi / r
    for root in rs.roots:
        z = root.value
        if z == 0:
            zero_mult += root.multiplicity
            continue
        b = round((_arg(z) - math.pi / r) / step) % r
        sectors.setdefault(b, []).append(z)

    branches = []
    for b in sorted(sectors):
        members = sectors[b]
        inner = min(members, key=abs)
        ys = [z ** r for z in members]
        nearest = min(ys, key=lambda y: abs(y + 1))
        branches.append(Branch(
            index=b,
            angle=(2 * b + 1) * math.pi / r,
            innermost=inner,
            innermost_y=inner ** r,
            distance=abs(inner ** r + 1),
            nearest_y=nearest,
            nearest_distance=abs(nearest + 1),
        ))
    orbit_count = len([oid for oid in rs.orbits() if oid != 0])
    return StarProbeReport(r, n, p, rs.degree, orbit_count, tuple(branches), rs.max_residual, zero_mult)
