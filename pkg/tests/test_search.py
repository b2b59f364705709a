import json
import random

import pytest

from isotwist.curve import IntegralPoint, TwistedCurve, validate_point
from isotwist.errors import BudgetExceeded, InvalidFilter
from isotwist.field import FieldSpec
from isotwist.poly import Polynomial, parse_poly
from isotwist.search import (
    CSV_COLUMNS,
    SweepSpec,
    admissible_leading,
    enumerate_A,
    enumerate_f,
    frobenius_lift,
    naive_enumerate,
    search_separable,
    search_window,
    sweep,
)
from isotwist.theorems import check_lemma_gdf

from conftest import constructed_curves, twist

GF3, GF5, GF7 = FieldSpec(3), FieldSpec(5), FieldSpec(7)


def T(text, spec):
    return parse_poly(text, spec, "t")


class TestWindow:
    @pytest.mark.parametrize("d,expected", [(3, [1]), (5, [3]), (7, [3, 5]), (9, [3, 5, 7]), (11, [5, 7, 9])])
    def test_window(self, d, expected):
        assert search_window(d) == expected

    def test_admissible_leading_brute_force(self):
        c = twist(7, "3*t^5 + t + 1", "2*x^3 + x + 1")
        squares = {x * x for x in GF7.nonzero_elements()}
        expect = [a for a in GF7.nonzero_elements() if GF7(2) * a**3 / GF7(3) in squares]
        assert admissible_leading(c, 3) == expect


class TestNaive:
    def test_q3_family(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        pts = naive_enumerate(c, 1)
        assert len(pts) == 6
        expect = {(T(f"t + {b}", GF3), T(str(s), GF3)) for b in range(3) for s in (1, 2)}
        assert {(P.F, P.G) for P in pts} == expect
        assert all(P.is_separable for P in pts)

    def test_empty_window(self):
        assert naive_enumerate(twist(3, "t^3 - t", "x^3 - x"), 0) == []

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            naive_enumerate(twist(7, "t^7 - t", "x^3 - x"), 5, budget=1000)


@pytest.fixture(scope="module")
def q7():
    c = twist(7, "t^7 - t", "x^3 - x")
    return c, search_separable(c)


class TestSearch:
    def test_q3_family(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        r = search_separable(c)
        assert len(r.separable) == 6
        assert r.bound_value == 27 and r.bound_respected
        assert r.points == naive_enumerate(c, 1)

    def test_q7_family(self, q7):
        c, r = q7
        got = {(P.F, P.G) for P in r.separable}
        t3, t = T("t^3", GF7), T("t", GF7)
        assert (t3, t) in got and (t3, -t) in got
        for P in r.separable:
            assert check_lemma_gdf(c, P).ok
            assert P.G.degree <= P.F.degree - 1
        assert r.bound_respected

    def test_q7_family_oracle(self, q7):
        # naive over the window (deg F <= 5) is too large; restrict both to deg F = 3
        c, r = q7
        naive3 = naive_enumerate(c, 3)
        assert [P for P in r.points if P.F.degree == 3] == naive3

    def test_sorted_and_deterministic(self, q7):
        c, a = q7
        b = search_separable(c, jobs=2)
        assert a.points == b.points
        keys = [P.sort_key() for P in a.points]
        assert keys == sorted(keys)

    def test_empty_report_for_irreducible_f(self):
        # x^3 - x + 1 is irreducible over GF(3); d = 3 forces deg F = 1 and G constant
        c = twist(3, "t^3 + t^2 + 1", "x^3 - x + 1")
        r = search_separable(c)
        assert r.points == naive_enumerate(c, 1) == []

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            search_separable(twist(7, "t^7 - t", "x^3 - x"), budget=100)

    def test_json(self):
        r = search_separable(twist(3, "t^3 - t", "x^3 - x"))
        j = json.loads(json.dumps(r.to_json()))
        assert j["counts"] == {"separable": 6, "inseparable": 0, "constant": 0}
        assert j["bound_value"] == 27


class TestOracleEquivalence:
    def test_gf3_d3_exhaustive(self):
        for A in enumerate_A(GF3, 3, "all"):
            for f in enumerate_f(GF3, "all"):
                c = TwistedCurve.from_polys(A, f)
                assert search_separable(c).points == naive_enumerate(c, 1)

    def test_gf3_d5_sampled(self):
        # in characteristic 3, deg F = 3 gives deg F' <= 1 < deg G = 2, so G | F' never holds;
        # the window is therefore empty of separable points and the oracle must agree
        pairs = SweepSpec(GF3, 5, "all", "all", sample=200, seed=5).pairs()
        for A, f in pairs:
            c = TwistedCurve.from_polys(A, f)
            r = search_separable(c)
            assert r.points == naive_enumerate(c, 3)
            assert r.separable == []

    def test_gf5_d5_constructed(self):
        curves = constructed_curves(GF5, "x^3 - x")
        assert len(curves) >= 10
        for c, F, G in curves:
            r = search_separable(c)
            assert r.points == naive_enumerate(c, 3)
            keys = {(P.F, P.G) for P in r.points}
            assert (F, G) in keys and (F, -G) in keys
            for P in r.separable:
                assert check_lemma_gdf(c, P).ok


class TestFrobenius:
    def test_q3_family_point(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        P = validate_point(c, T("t", GF3), T("1", GF3))
        L = frobenius_lift(c, P)
        assert (L.F, L.G) == (T("t^3", GF3), T("t^3 - t", GF3))
        assert L.kind == "inseparable"

    def test_constant_point(self):
        c = twist(3, "t^3 - t", "x^3 - x")
        P = validate_point(c, T("2", GF3), Polynomial.zero(GF3))
        L = frobenius_lift(c, P)
        assert L.is_constant and L.F == T("2", GF3)

    def test_constant_point_gf9(self):
        K = FieldSpec(3, 2)
        c = TwistedCurve.from_polys(T("t^3 - t", K), parse_poly("x^3 + x", K, "x"))
        # x -> x^9 fixes GF(9), so the constant point i (a root of x^3 + x) is fixed
        i = K([0, 1])
        P = validate_point(c, Polynomial.constant(K, i), Polynomial.zero(K))
        L = frobenius_lift(c, P)
        assert L.F == Polynomial.constant(K, i**9) == P.F and L.is_constant

    @pytest.mark.parametrize("q", [3, 7])
    def test_iterates_match_direct_formula(self, q):
        c = twist(q, f"t^{q} - t", "x^3 - x")
        t = T("t", c.spec)
        P = validate_point(c, t ** ((q - 1) // 2), t ** ((q - 3) // 4))
        L = P
        for n in (1, 2):
            L = frobenius_lift(c, L)
            qn = q**n
            assert L.F == P.F**qn
            assert L.G == c.A ** ((qn - 1) // 2) * P.G**qn
            assert L.kind == "inseparable"


class TestSweep:
    def test_gf3_d3_constant_derivative(self):
        r = sweep(SweepSpec(GF3, 3, "constant_derivative", "all"))
        agg = r.aggregate()
        assert r.ok, agg["violations"]
        assert agg["n_curves"] == agg["n_thm34_applicable"] == agg["n_thm34_verified"] > 0
        assert all(row["lemma32_ok"] is True for row in r.rows)

    def test_empty_A_list(self):
        r = sweep(SweepSpec(GF3, 3, "explicit", "all", A_list=[]))
        assert r.rows == [] and r.ok
        assert r.to_csv() == ",".join(CSV_COLUMNS) + "\n"
        assert r.aggregate()["max_separable"] == 0

    def test_determinism_across_jobs(self):
        spec = SweepSpec(GF3, 3, "monic", "all", oracle=True)
        a, b = sweep(spec, jobs=1), sweep(spec, jobs=2)
        assert a.to_csv() == b.to_csv()
        agg_a, agg_b = a.aggregate(), b.aggregate()
        assert agg_a == agg_b

    def test_sampling_is_seeded(self):
        s1 = SweepSpec(GF5, 3, "all", "all", sample=20, seed=3)
        s2 = SweepSpec(GF5, 3, "all", "all", sample=20, seed=3)
        s3 = SweepSpec(GF5, 3, "all", "all", sample=20, seed=4)
        assert s1.pairs() == s2.pairs() != s3.pairs()
        assert len(s1.pairs()) == 20

    def test_gf3_d5_fixed_f(self):
        # every A of degree 5, f = x^3 - x: no separable points, bound 3^7
        spec = SweepSpec(GF3, 5, "all", "fixed", f_list=[parse_poly("x^3 - x", GF3, "x")])
        r = sweep(spec, jobs=2)
        agg = r.aggregate()
        assert r.ok and agg["bound"] == 3**7
        assert agg["max_separable"] <= 2187

    def test_json_round_trip(self):
        spec = SweepSpec(GF5, 5, "explicit", "fixed", A_list=[T("t^5 + 2*t^3 + 2*t", GF5)],
                         f_list=[parse_poly("x^3 - x", GF5, "x")], oracle=True, lifts=True)
        again = SweepSpec.from_json(json.dumps(spec.to_json()))
        assert again == spec
        r = sweep(again)
        assert r.ok and r.rows[0]["n_separable"] > 0

    def test_bad_filter(self):
        with pytest.raises(InvalidFilter):
            SweepSpec.from_json({"field": 3, "d": 3, "A_filter": "weird"})

    def test_budget_keeps_partial(self):
        spec = SweepSpec(GF7, 7, "explicit", "fixed", A_list=[T("t^7 - t", GF7)],
                         f_list=[parse_poly("x^3 - x", GF7, "x")], budget=1000)
        with pytest.raises(BudgetExceeded) as exc:
            sweep(spec)
        assert exc.value.partial.complete is False
