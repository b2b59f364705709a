import itertools

import pytest

from isotwist.curve import EllipticCurve, TwistedCurve, j1728, j_invariant, validate_point
from isotwist.errors import GammaNotConstant, NotSeparable
from isotwist.field import FieldSpec, embed
from isotwist.poly import Polynomial, gcd_monic, parse_poly, splitting_spec
from isotwist.search import enumerate_A, enumerate_f, search_separable
from isotwist.theorems import (
    arithmetic_progression_check,
    check_conditions,
    check_lemma_gdf,
    decompose,
    split_roots,
)

from conftest import constructed_curves, twist

GF3, GF5, GF7 = FieldSpec(3), FieldSpec(5), FieldSpec(7)


def T(text, spec):
    return parse_poly(text, spec, "t")


def family(q):
    spec = FieldSpec.from_order(q)
    c = twist(spec, f"t^{q} - t", "x^3 - x")
    t = T("t", spec)
    return c, validate_point(c, t ** ((q - 1) // 2), t ** ((q - 3) // 4))


def brute_progression(f):
    """Roots found by evaluating f at every element of its splitting field."""
    K = splitting_spec(f)
    g = f.embed(K)
    roots = [x for x in K.elements() if g(x).is_zero()]
    assert len(roots) == 3
    return any(2 * a == b + c for a, b, c in itertools.permutations(roots))


class TestLemma:
    def test_q7(self):
        c, P = family(7)
        assert P.G.divides(P.F.derivative())
        r = check_lemma_gdf(c, P)
        assert (r.g_divides_fprime, r.lower_ok, r.upper_ok) == (True, True, True)

    def test_q3(self):
        c, P = family(3)
        assert check_lemma_gdf(c, P).ok

    def test_inseparable_rejected(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        P = validate_point(c, T("t^3", GF3), T("t^3 - t", GF3))
        with pytest.raises(NotSeparable):
            check_lemma_gdf(c, P)
        with pytest.raises(NotSeparable):
            check_conditions(c, P)
        with pytest.raises(NotSeparable):
            decompose(c, P)


class TestConditions:
    def test_q7(self):
        c, P = family(7)
        r = check_conditions(c, P)
        assert r.condA and r.condB and r.condC
        assert r.beta == GF7(3).inv() == 5
        assert r.j == 6 == j1728(GF7)
        assert r.ok

    def test_q3(self):
        c, P = family(3)
        r = check_conditions(c, P)
        assert r.condA and r.condB and r.condC
        assert r.beta == 1
        assert r.j == 0 and r.j_is_1728 and r.progression

    def test_gamma_required(self):
        c = twist(5, "t^5 + 2*t^3 + 2*t", "x^3 - x")
        P = validate_point(c, T("t^3 - 2*t", GF5), T("t^2 + 1", GF5))
        with pytest.raises(GammaNotConstant):
            check_conditions(c, P)

    @pytest.mark.parametrize("q", [3, 7, 11, 19, 23, 27])
    def test_family_beta_is_minus_two(self, q):
        c, P = family(q)
        r = check_conditions(c, P, strict=True)
        assert r.beta == -2 and r.ok

    def test_all_points_on_q7_family_curve(self):
        c, _ = family(7)
        for P in search_separable(c).separable:
            r = check_conditions(c, P, strict=True)
            # (A) and (B) agree through d + 2 deg G = 3 deg F alone
            assert (2 * P.F.degree <= c.d - 1) == (2 * P.G.degree <= P.F.degree - 1)
            if r.condC:
                assert r.j_is_1728 and r.progression and r.beta.spec == c.spec

    def test_a_iff_b_on_non_gamma_curves(self):
        for c, F, G in constructed_curves(GF5, "x^3 - x"):
            for P in search_separable(c).separable:
                assert (2 * P.F.degree <= c.d - 1) == (2 * P.G.degree <= P.F.degree - 1)


class TestDecompose:
    def test_q7_family(self):
        c, P = family(7)
        dec = decompose(c, P)
        assert dec.ok, dec.checks
        assert set(dec.alpha) == {GF7(0), GF7(1), GF7(-1)}
        k0 = dec.alpha.index(GF7(0))
        assert dec.F_i[k0] == T("t^3", GF7)
        assert dec.N_i[k0] == T("t", GF7) == gcd_monic(c.A, T("t^3", GF7))
        assert dec.S_i[k0] == T("t", GF7)
        assert dec.N_i[0] * dec.N_i[1] * dec.N_i[2] == c.A.monic()
        assert dec.s_i == [1, 0, 0]
        # beta_1 = beta_2 = beta from (C)
        assert dec.beta_l[1] == dec.beta_l[2] == check_conditions(c, P).beta

    @pytest.mark.parametrize("q", [3, 11, 19])
    def test_family_other_q(self, q):
        c, P = family(q)
        dec = decompose(c, P)
        assert dec.ok, dec.checks
        assert dec.beta_l[1] == check_conditions(c, P).beta == -2

    def test_gf3_d3_exhaustive(self):
        n_points = 0
        for A in enumerate_A(GF3, 3, "all"):
            for f in enumerate_f(GF3, "all"):
                c = TwistedCurve.from_polys(A, f)
                for P in search_separable(c).separable:
                    dec = decompose(c, P)
                    assert dec.ok, (c.label(), P.to_json(), dec.checks)
                    n_points += 1
                    if c.gamma is not None:
                        cr = check_conditions(c, P, strict=True)
                        assert cr.condC
                        assert dec.beta_l[1] == dec.beta_l[2] == embed(cr.beta, dec.field)
        assert n_points > 0

    def test_constructed_gf5_d5(self):
        for c, F, G in constructed_curves(GF5, "x^3 - x"):
            for P in search_separable(c).separable:
                assert decompose(c, P).ok

    def test_nonsplit_cubic_uses_extension(self):
        # x^3 - x + 1 is irreducible over GF(3): A = f(t) carries (t, 1)
        c = twist(3, "t^3 - t + 1", "x^3 - x + 1")
        P = validate_point(c, T("t", GF3), T("1", GF3))
        dec = decompose(c, P)
        assert dec.field.q == 27 and dec.ok
        assert dec.beta_l[1] == dec.beta_l[2] == embed(check_conditions(c, P).beta, dec.field)

    def test_json_has_every_intermediate(self):
        c, P = family(7)
        j = decompose(c, P).to_json()
        for key in ("alpha", "F_i", "N_i", "S_i", "u_i", "s_i", "beta_l", "checks"):
            assert key in j
        assert all(isinstance(s, str) for s in j["N_i"])


class TestProgression:
    def test_examples(self):
        assert arithmetic_progression_check(EllipticCurve(parse_poly("x^3 - x", GF7, "x")))
        assert arithmetic_progression_check(EllipticCurve(parse_poly("x*(x-1)*(x-2)", GF7, "x")))
        f = parse_poly("x^3 + x + 1", GF5, "x")
        assert arithmetic_progression_check(EllipticCurve(f)) == brute_progression(f)

    @pytest.mark.parametrize("q", [3, 5, 7])
    def test_matches_brute_force(self, q):
        spec = FieldSpec(q)
        for f in enumerate_f(spec, "monic"):
            assert arithmetic_progression_check(EllipticCurve(f)) == brute_progression(f)

    @pytest.mark.parametrize("q", [5, 7, 11, 13])
    def test_progression_implies_1728(self, q):
        # roots a, a + r, a + 2r translate to 0, +-r: y^2 = x^3 - r^2 x
        spec = FieldSpec(q)
        for a, r in itertools.product(range(q), range(1, q)):
            f = parse_poly(f"(x - {a})*(x - {a + r})*(x - {a + 2 * r})", spec, "x")
            E = EllipticCurve(f)
            assert arithmetic_progression_check(E)
            assert j_invariant(E) == j1728(spec)

    def test_split_roots(self):
        K, roots = split_roots(EllipticCurve(parse_poly("x^3 + x", GF3, "x")))
        assert K.q == 9 and len(set(roots)) == 3
