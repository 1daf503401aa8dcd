import cmath
import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbzeros.exactpoly import IntPolynomial, formal_derivative, square_free_part
from rbzeros.rbonacci import (
    InvalidParams,
    RBonacciParams,
    build_closed_form,
    build_derivative_closed_form,
    build_recurrence,
)
from rbzeros.roots import (
    NonConvergence,
    OrbitIncomplete,
    find_roots,
    group_orbits,
    matching_distance,
    quadratic_orbit_roots,
    reference_roots,
    residual,
    rotation_closure_defect,
    rth_roots,
    star_probe,
)
from rbzeros.vieta import InvalidSpec

P = IntPolynomial
T6_4 = P.from_terms({6: 5040, 3: 3360, 0: 144})
Q8_13 = P.from_terms({8: 1267136462592000, 4: 88921857024000, 0: 93405312000})


def numpy_roots(poly):
    return list(np.roots([float(c) / poly.leading for c in reversed(poly.coeffs)]))


def valid_quadratic(r_range, n_range):
    for r in r_range:
        for n in n_range:
            for p in range(r):
                try:
                    yield quadratic_orbit_roots(r, n, p)
                except InvalidSpec:
                    continue


class TestFindRoots:
    def test_b6_multiplicity_four(self):
        rs = find_roots(P.from_terms({5: 1, 0: 1}) ** 4)
        assert len(rs.roots) == 5
        assert all(root.multiplicity == 4 for root in rs.roots)
        assert rs.r == 5
        for root in rs.roots:
            assert abs(root.value ** 5 + 1) < 1e-12
            assert root.residual <= 1e-10

    def test_t4_multiplicity_two(self):
        rs = find_roots(P.from_terms({3: 1, 0: 1}) ** 2)
        assert [root.multiplicity for root in rs.roots] == [2, 2, 2]

    def test_cube_roots_of_minus_one(self):
        rs = find_roots(P([1, 0, 0, 1]))
        want = [-1, cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3)]
        assert matching_distance(rs.values, want) < 1e-14

    def test_multiplicities_sum_to_degree(self):
        for r in range(2, 6):
            for n in range(2, 16):
                poly = build_closed_form(RBonacciParams(r, n))
                if poly.degree < 1:
                    continue
                rs = find_roots(poly)
                assert sum(root.multiplicity for root in rs.roots) == poly.degree

    def test_mixed_multiplicities_and_zero(self):
        # x^3 (x - 2)^2 (x^2 + 1): zero is triple, 2 double, +-i simple
        poly = P.monomial(3) * P([-2, 1]) ** 2 * P([1, 0, 1])
        rs = find_roots(poly, r=1)
        got = sorted((round(root.value.real, 9), round(root.value.imag, 9), root.multiplicity)
                     for root in rs.roots)
        assert got == [(0.0, -1.0, 1), (0.0, 0.0, 3), (0.0, 1.0, 1), (2.0, 0.0, 2)]
        assert rs.orbit_ids[0] == 0

    def test_t6_derivative_against_closed_form(self):
        rs = find_roots(T6_4)
        assert matching_distance(rs.expanded(), list(quadratic_orbit_roots(3, 2, 0).roots)) < 1e-10

    def test_huge_coefficients(self):
        b8 = P.from_terms({10: 84019054401376174080000, 5: 1292600836944248832000, 0: 96035605585920000})
        rs = find_roots(b8)
        assert rs.max_residual <= 1e-10
        assert len(rs.roots) == 10

    def test_against_numpy_on_small_degree(self):
        # companion-matrix roots smear a k-fold root by eps**(1/k); compare on square-free inputs only
        for r in range(2, 5):
            for n in range(3, 9):
                poly = build_closed_form(RBonacciParams(r, n))
                if square_free_part(poly) != poly:
                    continue
                rs = find_roots(poly)
                assert matching_distance(rs.expanded(), numpy_roots(poly)) < 1e-6

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            find_roots(P([3]))

    def test_unreachable_target(self):
        poly = build_closed_form(RBonacciParams(3, 20))
        with pytest.raises(NonConvergence) as info:
            find_roots(poly, target_residual=1e-300)
        assert info.value.best_residual > 0

    def test_deterministic(self):
        poly = build_closed_form(RBonacciParams(4, 15))
        assert find_roots(poly) == find_roots(poly)

    def test_concurrent_solves(self):
        polys = [build_closed_form(RBonacciParams(r, 12)) for r in (2, 3, 4, 5)]
        serial = [find_roots(p) for p in polys]
        out = [None] * len(polys)

        def work(i):
            out[i] = find_roots(polys[i])

        threads = [threading.Thread(target=work, args=(i,)) for i in range(len(polys))]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert out == serial

    def test_subnormal_imaginary_parts(self):
        # real roots can come back with imaginary parts like 5e-324
        poly = P([1])
        for a in (-3, 6, 8, -9, 20, 26):
            poly = poly * P([-a, 1])
        rs = find_roots(poly, r=1)
        assert sorted(round(z.real) for z in rs.values) == [-9, -3, 6, 8, 20, 26]
        assert group_orbits([complex(26, 5e-324)], [1], 2) == [(1, 0)]

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=6), st.integers(1, 3))
    def test_constructed_integer_roots(self, roots, k):
        poly = P([1])
        for a in roots:
            poly = poly * P([-a, 1])
        poly = poly ** k
        rs = find_roots(poly, r=1)
        want = sorted({a: roots.count(a) * k for a in roots}.items())
        got = sorted((round(root.value.real), root.multiplicity) for root in rs.roots)
        assert got == want
        assert rs.max_residual <= 1e-10


class TestRotationClosure:
    def test_grid(self):
        for r in range(2, 7):
            for n in range(2, 31):
                poly = build_closed_form(RBonacciParams(r, n))
                if poly.degree < 1 or poly.degree > 120:
                    continue
                rs = find_roots(poly, r=r)
                assert rotation_closure_defect(rs) <= 1e-8, (r, n)
                assert rs.max_residual <= 1e-10, (r, n)

    def test_orbits_have_r_members(self):
        rs = find_roots(build_closed_form(RBonacciParams(4, 9)), r=4)
        for oid, members in rs.orbits().items():
            assert len(members) == (1 if oid == 0 else 4)

    def test_group_orbits_directly(self):
        w = cmath.exp(2j * math.pi / 3)
        values = [0j, 2 * w, 2 + 0j, 2 * w * w, -0.5 + 0j, -0.5 * w, -0.5 * w * w]
        ids = group_orbits(values, [1] * len(values), 3)
        assert ids[0] == (0, 0)
        assert len({ids[i][0] for i in (1, 2, 3)}) == 1
        assert len({ids[i][0] for i in (4, 5, 6)}) == 1
        # -0.5 sits at argument pi, so it leads its orbit
        assert ids[4][1] == 0
        # smaller modulus gets the smaller id
        assert ids[4][0] < ids[1][0]


class TestReferenceRoots:
    def test_b6(self):
        ref = reference_roots(find_roots(P.from_terms({5: 1, 0: 1}) ** 4))
        assert len(ref.representatives) == 1
        assert abs(ref.representatives[0] + 1) < 1e-14
        assert ref.multiplicities == (4,)

    def test_t3_zero_excluded(self):
        ref = reference_roots(find_roots(P.from_terms({4: 1, 1: 1}), r=3))
        assert len(ref.representatives) == 1
        assert abs(ref.representatives[0] + 1) < 1e-14

    def test_cubic(self):
        ref = reference_roots(find_roots(P([1, 0, 0, 1])))
        assert abs(ref.representatives[0] + 1) < 1e-14

    @pytest.mark.parametrize("r", range(2, 9))
    def test_n1_representatives_solve_star(self, r):
        for idx in (r, r + 1):
            rs = find_roots(build_closed_form(RBonacciParams(r, idx)), r=r)
            for z in reference_roots(rs).representatives:
                assert abs(z ** r + 1) < 1e-10

    def test_window(self):
        r = 4
        rs = find_roots(build_closed_form(RBonacciParams(r, 13)), r=r)
        for z in reference_roots(rs).representatives:
            arg = cmath.phase(z)
            assert math.pi - 2 * math.pi / r < arg <= math.pi + 1e-15

    def test_wrong_r_is_incomplete(self):
        with pytest.raises(OrbitIncomplete):
            reference_roots(find_roots(P([1, 0, 0, 1]), r=2))


class TestClosedForm:
    def test_t6(self):
        cf = quadratic_orbit_roots(3, 2, 0)
        assert len(cf.roots) == 6
        assert cf.y_plus + cf.y_minus == pytest.approx(-2 / 3, abs=1e-15)
        assert cf.y_plus * cf.y_minus == pytest.approx(1 / 35, abs=1e-15)

    def test_q8_published_values(self):
        cf = quadratic_orbit_roots(4, 2, 0)
        want = set()
        for a in (0.12779, 0.36255):
            for sr in (1, -1):
                for si in (1, -1):
                    want.add((sr * a, si * a))
        got = {(round(z.real, 5), round(z.imag, 5)) for z in cf.roots}
        assert got == want
        numeric = {(round(z.real, 5), round(z.imag, 5)) for z in find_roots(Q8_13).values}
        assert numeric == want

    def test_rth_roots(self):
        zs = rth_roots(-8 + 0j, 3)
        assert all(abs(z ** 3 + 8) < 1e-12 for z in zs)
        assert rth_roots(0j, 3) == [0j, 0j, 0j]

    def test_fibonacci_second_derivative(self):
        # r = 2, n = 3, p = 1: second derivative of F_7
        cf = quadratic_orbit_roots(2, 3, 1)
        assert cf.spec.t == 2 and cf.spec.index == 7
        target = formal_derivative(build_recurrence(RBonacciParams(2, 7)), 2)
        assert matching_distance(find_roots(target).expanded(), list(cf.roots)) < 1e-10

    def test_invalid(self):
        with pytest.raises(InvalidSpec):
            quadratic_orbit_roots(2, 2, 0)

    def test_vieta_closure(self):
        for cf in valid_quadratic(range(2, 6), range(2, 6)):
            assert abs(cf.y_plus + cf.y_minus - float(cf.psi)) <= 1e-12 * max(1, abs(float(cf.psi)))
            assert abs(cf.y_plus * cf.y_minus - float(cf.upsilon)) <= 1e-12 * max(1, abs(float(cf.upsilon)))

    def test_oracle_agreement(self):
        count = 0
        for cf in valid_quadratic(range(2, 6), range(2, 6)):
            poly = build_derivative_closed_form(RBonacciParams(cf.spec.r, cf.spec.index), cf.spec.t)
            rs = find_roots(poly, r=cf.spec.r)
            assert matching_distance(rs.expanded(), list(cf.roots)) <= 1e-9
            count += 1
        assert count > 20

    def test_matching_distance(self):
        assert matching_distance([0, 1], [1, 0]) == 0
        assert matching_distance([0, 1], [1.5, 0]) == 0.5
        assert matching_distance([0], [0, 1]) == math.inf


class TestResidual:
    def test_exact_root(self):
        assert residual(P([1, 0, 0, 1]), -1) == 0

    def test_normalised_by_modulus(self):
        # monic x^2 at z = 10: |100| / 10^2 = 1
        assert residual(P([0, 0, 3]), 10) == pytest.approx(1.0)


class TestStarProbe:
    def test_t4_all_on_minus_one(self):
        rep = star_probe(3, 1, 1)
        assert rep.degree == 6
        assert len(rep.branches) == 2 or len(rep.branches) == 3
        assert all(b.distance < 1e-10 for b in rep.branches)

    def test_f6_real_negative(self):
        rep = star_probe(2, 3, 0)
        assert rep.zero_multiplicity == 1
        for b in rep.branches:
            assert abs(b.innermost_y.imag) < 1e-12 and b.innermost_y.real < 0
            assert b.distance == pytest.approx(0, abs=1e-12)  # y = -1 is the innermost branch point

    def test_n3_distance_positive(self):
        rep = star_probe(3, 3, 0)
        assert rep.min_distance > 0
        assert rep.orbit_count * 3 + rep.zero_multiplicity == rep.degree

    def test_invalid_p(self):
        with pytest.raises(InvalidParams):
            star_probe(3, 1, 3)

    @pytest.mark.parametrize("r", range(2, 9))
    def test_n1_cases(self, r):
        for p in (0, 1):
            rep = star_probe(r, 1, p)
            assert bool(rep.branches) == (rep.degree > rep.zero_multiplicity)
            assert max((b.distance for b in rep.branches), default=0.0) <= 1e-10
