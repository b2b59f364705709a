import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from isotwist.curve import (
    EllipticCurve,
    IntegralPoint,
    TwistedCurve,
    count_points_affine_plus_infinity,
    hasse_interval,
    j1728,
    j_invariant,
    morphism_view,
    validate_point,
)
from isotwist.errors import ConstantPoint, FieldTooLarge, InvalidCurve, NotOnCurve
from isotwist.field import FieldSpec
from isotwist.poly import Polynomial, is_squarefree, parse_poly

from conftest import twist

GF3, GF5, GF7 = FieldSpec(3), FieldSpec(5), FieldSpec(7)


def E(text, spec):
    return EllipticCurve(parse_poly(text, spec, "x"))


def brute_count(f):
    """#E(GF(q)) by counting pairs (x, y) with y^2 = f(x), plus infinity."""
    spec = f.spec
    sq = {}
    for y in spec.elements():
        sq[y * y] = sq.get(y * y, 0) + 1
    return 1 + sum(sq.get(f(x), 0) for x in spec.elements())


def j_short(a, b):
    """j of y^2 = x^3 + a x + b via 1728 * 4a^3 / (4a^3 + 27b^2)."""
    num = 4 * a * a * a
    return 1728 * num / (num + 27 * b * b)


class TestCurves:
    def test_rejects_singular_cubic(self):
        with pytest.raises(InvalidCurve):
            E("x^3", GF7)
        with pytest.raises(InvalidCurve):
            E("x^2 + 1", GF7)

    def test_twist_validation(self):
        with pytest.raises(InvalidCurve, match="square-free"):
            twist(5, "(t+1)^2", "x^3 - x")
        with pytest.raises(InvalidCurve, match="odd"):
            twist(5, "t^4 + t", "x^3 - x")
        with pytest.raises(InvalidCurve):
            twist(5, "t", "x^3 - x")
        with pytest.raises(InvalidCurve):
            TwistedCurve.from_polys(parse_poly("t^3 - t", GF3), parse_poly("x^3 - x", GF5, "x"))

    def test_derived_attributes(self):
        c = twist(7, "t^7 - t", "x^3 - x")
        assert (c.d, c.genus, c.gamma) == (7, 3, GF7(-1))
        assert twist(7, "t^3 + t^2 + 1", "x^3 - x").gamma is None


class TestValidate:
    def setup_method(self):
        self.c = twist(3, "t^3 - t", "x^3 - x")

    def test_examples(self):
        t = parse_poly("t", GF3)
        P = validate_point(self.c, t, parse_poly("1", GF3))
        assert P.kind == "separable"
        Q = validate_point(self.c, t, parse_poly("2", GF3))
        assert Q.kind == "separable" and Q != P and Q == P.negate()
        with pytest.raises(NotOnCurve):
            validate_point(self.c, t, t)

    def test_constant_points(self):
        for a in range(3):
            P = validate_point(self.c, Polynomial.constant(GF3, a), Polynomial.zero(GF3))
            assert P.is_constant
            with pytest.raises(ConstantPoint):
                morphism_view(self.c, P)

    def test_inseparable(self):
        c = self.c
        F = parse_poly("t^3", GF3)
        G = parse_poly("t^3 - t", GF3)
        assert validate_point(c, F, G).kind == "inseparable"

    def test_json(self):
        P = validate_point(self.c, parse_poly("t + 1", GF3), parse_poly("1", GF3))
        assert P.to_json() == {"F": "t + 1", "G": "1", "class": "separable"}
        assert self.c.to_json() == {"field": "3", "A": "t^3 - t", "f": "x^3 - x"}

    def test_sign_symmetry_and_degree_identity(self):
        c = twist(7, "t^7 - t", "x^3 - x")
        rng = random.Random(3)
        t = parse_poly("t", GF7)
        F, G = t**3, t
        for P_F, P_G in [(F, G)]:
            P = validate_point(c, P_F, P_G)
            N = validate_point(c, P_F, -P_G)
            assert N != P
            assert c.d + 2 * P.G.degree == 3 * P.F.degree
        # random non-points are rejected symmetrically
        for _ in range(200):
            F = Polynomial(GF7, [rng.randrange(7) for _ in range(4)])
            G = Polynomial(GF7, [rng.randrange(7) for _ in range(2)])
            on = c.A * G * G == c.f.compose(F)
            for sign in (1, -1):
                try:
                    validate_point(c, F, G.scale(GF7(sign)))
                    ok = True
                except NotOnCurve:
                    ok = False
                assert ok == on


class TestJ:
    def test_examples(self):
        assert j_invariant(E("x^3 - x", GF7)) == 6
        assert j_invariant(E("x^3 - x", GF3)) == 0
        assert j_invariant(E("x^3 + x + 1", GF5)) == 2
        assert j_short(GF7(-1), GF7(0)) == 6
        assert j_short(GF5(1), GF5(1)) == 2

    @pytest.mark.parametrize("q", [5, 7, 11, 13, 25, 49])
    def test_matches_short_weierstrass_formula(self, q):
        spec = FieldSpec.from_order(q)
        for a in spec.elements():
            for b in spec.elements():
                disc = 4 * a * a * a + 27 * b * b
                if disc.is_zero():
                    continue
                f = Polynomial(spec, [b, a, 0, 1])
                assert j_invariant(EllipticCurve(f)) == j_short(a, b)

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27, 49])
    def test_x3_minus_a2x_is_1728(self, q):
        spec = FieldSpec.from_order(q)
        for a in spec.nonzero_elements():
            f = Polynomial(spec, [0, -(a * a), 0, 1])
            assert j_invariant(EllipticCurve(f)) == j1728(spec)

    @pytest.mark.parametrize("q", [3, 5, 7, 9])
    def test_translation_and_scaling_invariance(self, q):
        spec = FieldSpec.from_order(q)
        rng = random.Random(q)
        for _ in range(30):
            f = Polynomial._raw(spec, [rng.randrange(q) for _ in range(3)] + [rng.randrange(1, q)])
            if not is_squarefree(f) or f.degree != 3:
                continue
            j = j_invariant(EllipticCurve(f))
            for a0 in spec.elements():
                shifted = f.compose(Polynomial(spec, [a0, 1]))
                assert j_invariant(EllipticCurve(shifted)) == j
            assert j_invariant(EllipticCurve(f.scale(spec(2)))) == j


class TestCount:
    def test_examples(self):
        assert count_points_affine_plus_infinity(E("x^3 - x", GF3)) == 4
        assert count_points_affine_plus_infinity(E("x^3 - x", GF7)) == 8

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
    def test_hasse_exhaustive(self, q):
        spec = FieldSpec.from_order(q)
        lo, hi = hasse_interval(q)
        for coeffs in itertools.product(range(q), repeat=3):
            f = Polynomial._raw(spec, coeffs + (1,))
            if not is_squarefree(f):
                continue
            N = count_points_affine_plus_infinity(EllipticCurve(f))
            assert lo <= N <= hi
            assert (N - q - 1) ** 2 <= 4 * q

    @pytest.mark.parametrize("q", [17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49])
    def test_hasse_sampled_larger_fields(self, q):
        spec = FieldSpec.from_order(q)
        rng = random.Random(q)
        n = 0
        while n < 40:
            f = Polynomial._raw(spec, [rng.randrange(q) for _ in range(3)] + [rng.randrange(1, q)])
            if not is_squarefree(f):
                continue
            n += 1
            N = count_points_affine_plus_infinity(EllipticCurve(f))
            assert (N - q - 1) ** 2 <= 4 * q

    @pytest.mark.parametrize("q", [3, 7, 9, 13])
    def test_brute_force_pairs(self, q):
        spec = FieldSpec.from_order(q)
        rng = random.Random(11 * q)
        for _ in range(20):
            f = Polynomial._raw(spec, [rng.randrange(q) for _ in range(3)] + [1])
            if is_squarefree(f):
                assert count_points_affine_plus_infinity(EllipticCurve(f)) == brute_count(f)

    def test_cap(self):
        with pytest.raises(FieldTooLarge):
            count_points_affine_plus_infinity(E("x^3 - x", FieldSpec(10007)))


class TestMorphism:
    def test_family_q3(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        m = morphism_view(c, validate_point(c, parse_poly("t", GF3), parse_poly("1", GF3)))
        assert (m.degree, m.separable, m.degree_cap) == (1, True, 1)
        assert m.formula == ("t", "s")

    def test_family_q7(self):
        c = twist(7, "t^7 - t", "x^3 - x")
        m = morphism_view(c, validate_point(c, parse_poly("t^3", GF7), parse_poly("t", GF7)))
        assert (m.degree, m.degree_cap) == (3, 9)
        assert m.formula == ("t^3", "s*(t)")

    def test_inseparable_has_no_cap(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        P = validate_point(c, parse_poly("t^3", GF3), parse_poly("t^3 - t", GF3))
        m = morphism_view(c, P)
        assert not m.separable and m.degree_cap is None and m.degree == 3
