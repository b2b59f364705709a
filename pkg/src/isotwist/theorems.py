"""Machine checks for separable integral points on A(t) y^2 = f(x).

* ``check_lemma_gdf``: G divides F', and d/3 <= deg F <= d - 2.
* ``check_conditions``: when A' is a nonzero constant gamma, the three
  conditions (A) 2 deg F <= d - 1, (B) 2 deg G <= deg F - 1 and
  (C) G^2 = beta F' are equivalent, and imply j(E) = 1728.
* ``decompose``: over the splitting field of f = c (x - a0)(x - a1)(x - a2),
  F - a_i = u_i N_i S_i^2 with N_i = gcd(A, F - a_i), and the products of the
  N_i and S_i recover A and G up to units.  When the conditions hold,
  G^2 = beta_l F' for the two labels l with s_l smallest, where
  beta_l = f'(a_l) / gamma = c (a_l - a_i)(a_l - a_j) / gamma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .curve import EllipticCurve, IntegralPoint, TwistedCurve, j1728, j_invariant
from .errors import DecompositionFailed, GammaNotConstant, NotSeparable
from .field import FieldElement, FieldSpec, embed
from .poly import Polynomial, gcd_monic, poly_sqrt, roots_in_field, splitting_spec

__all__ = [
    "LemmaReport",
    "ConditionReport",
    "Decomposition",
    "check_lemma_gdf",
    "check_conditions",
    "decompose",
    "arithmetic_progression_check",
    "split_roots",
]


def _require_separable(P: IntegralPoint):
    if not P.is_separable:
        raise NotSeparable(f"point ({P.F.to_text()}, {P.G.to_text()}) is {P.kind}")


@dataclass(frozen=True)
class LemmaReport:
    g_divides_fprime: bool
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.g_divides_fprime and self.lower_ok and self.upper_ok

    def to_json(self) -> dict:
        return {
            "G_divides_Fprime": self.g_divides_fprime,
            "3degF_ge_d": self.lower_ok,
            "degF_le_d_minus_2": self.upper_ok,
            "ok": self.ok,
        }


def check_lemma_gdf(c: TwistedCurve, P: IntegralPoint) -> LemmaReport:
    _require_separable(P)
    dF = P.F.derivative()
    m = P.F.degree
    return LemmaReport(P.G.divides(dF), 3 * m >= c.d, m <= c.d - 2)


def split_roots(E: EllipticCurve) -> tuple[FieldSpec, list[FieldElement]]:
    K = splitting_spec(E.f)
    roots = roots_in_field(E.f, K)
    assert len(roots) == 3 and len(set(roots)) == 3, "square-free cubic must have 3 distinct roots"
    return K, roots


def arithmetic_progression_check(E: EllipticCurve) -> bool:
    """True iff one root of f is the average of the other two."""
    _, roots = split_roots(E)
    for i, j, l in itertools.permutations(range(3)):
        if 2 * roots[i] == roots[j] + roots[l]:
            return True
    return False


@dataclass(frozen=True)
class ConditionReport:
    condA: bool
    condB: bool
    condC: bool
    beta: FieldElement | None
    gamma: FieldElement
    j: FieldElement
    j_is_1728: bool
    progression: bool

    @property
    def consistent(self) -> bool:
        return self.condA == self.condB == self.condC

    @property
    def conclusion_ok(self) -> bool:
        """When the conditions hold, j = 1728, the roots are in progression and beta is a unit."""
        if not self.condC:
            return True
        return self.j_is_1728 and self.progression and self.beta is not None and not self.beta.is_zero()

    @property
    def ok(self) -> bool:
        return self.consistent and self.conclusion_ok

    def to_json(self) -> dict:
        return {
            "condA": self.condA,
            "condB": self.condB,
            "condC": self.condC,
            "beta": None if self.beta is None else self.beta.to_text(),
            "gamma": self.gamma.to_text(),
            "j": self.j.to_text(),
            "j_is_1728": self.j_is_1728,
            "progression": self.progression,
            "consistent": self.consistent,
            "ok": self.ok,
        }


def check_conditions(c: TwistedCurve, P: IntegralPoint, strict: bool = False) -> ConditionReport:
    """Evaluate conditions (A), (B), (C) for a separable point.

    (C) is tested as an exact identity G^2 * lc(F') == F' * lc(G^2), with
    beta = lc(G^2) / lc(F').  With ``strict`` any inconsistency raises.
    """
    _require_separable(P)
    gamma = c.gamma
    if gamma is None:
        raise GammaNotConstant(f"A' = {c.A.derivative().to_text()} is not a nonzero constant")
    d = c.d
    degF, degG = P.F.degree, P.G.degree
    condA = 2 * degF <= d - 1
    condB = 2 * degG <= degF - 1
    G2 = P.G * P.G
    dF = P.F.derivative()
    beta = None
    condC = False
    if G2.degree == dF.degree and G2.scale(dF.lc) == dF.scale(G2.lc):
        beta = G2.lc / dF.lc
        condC = not beta.is_zero()
    j = j_invariant(c.E)
    report = ConditionReport(
        condA, condB, condC, beta, gamma, j, j == j1728(c.spec), arithmetic_progression_check(c.E)
    )
    if strict:
        assert report.consistent, f"conditions disagree: {report.to_json()}"
        assert report.conclusion_ok, f"conclusion fails: {report.to_json()}"
    return report


@dataclass
class Decomposition:
    field: FieldSpec
    alpha: list[FieldElement]
    F_i: list[Polynomial]
    N_i: list[Polynomial]
    S_i: list[Polynomial]
    u_i: list[FieldElement]
    s_i: list[int]
    beta_l: list[FieldElement] | None
    gs_unit: FieldElement
    conditions_hold: bool
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "alpha": [a.to_text() for a in self.alpha],
            "F_i": [p.to_text() for p in self.F_i],
            "N_i": [p.to_text() for p in self.N_i],
            "S_i": [p.to_text() for p in self.S_i],
            "u_i": [u.to_text() for u in self.u_i],
            "s_i": list(self.s_i),
            "beta_l": None if self.beta_l is None else [b.to_text() for b in self.beta_l],
            "gs_unit": self.gs_unit.to_text(),
            "conditions_hold": self.conditions_hold,
            "checks": dict(self.checks),
            "ok": self.ok,
        }


def _same_up_to_unit(a: Polynomial, b: Polynomial) -> FieldElement | None:
    """The constant u with a = u*b, or None."""
    if a.is_zero() or b.is_zero() or a.degree != b.degree:
        return None
    u = a.lc / b.lc
    return u if a == b.scale(u) else None


def decompose(c: TwistedCurve, P: IntegralPoint) -> Decomposition:
    """Factor F - a_i = u_i N_i S_i^2 over the splitting field of f and audit the pieces.

    Raises DecompositionFailed when F - a_i / (u_i N_i) is not a square,
    which for a valid point would contradict unique factorization.
    """
    _require_separable(P)
    K, roots = split_roots(c.E)
    A, F, G = c.A.embed(K), P.F.embed(K), P.G.embed(K)

    parts = []
    for alpha in roots:
        Fi = F - alpha
        Ni = gcd_monic(A, Fi)
        Q, r = divmod(Fi, Ni)
        assert r.is_zero()
        u = Q.lc
        S = poly_sqrt(Q.scale(u.inv()))
        if S is None:
            raise DecompositionFailed(
                f"F - {alpha.to_text()} = {Fi.to_text()} is not N*S^2 with N = {Ni.to_text()}"
            )
        parts.append((alpha, Fi, Ni, S, u))
    # relabel so that s_0 >= s_1 >= s_2; ties keep root order
    parts.sort(key=lambda t: -t[3].degree)
    alpha = [t[0] for t in parts]
    F_i = [t[1] for t in parts]
    N_i = [t[2] for t in parts]
    S_i = [t[3] for t in parts]
    u_i = [t[4] for t in parts]
    s_i = [S.degree for S in S_i]

    checks = {}
    checks["N_i_nonconstant"] = all(N.degree >= 1 for N in N_i)
    checks["degF_odd"] = all(Fi.degree % 2 == 1 for Fi in F_i) and F.degree % 2 == c.d % 2 == 1
    checks["N_i_is_gcd"] = all(N == gcd_monic(A, Fi) for N, Fi in zip(N_i, F_i))
    checks["F_i_eq_uNS2"] = all(Fi == (N * S * S).scale(u) for Fi, N, S, u in zip(F_i, N_i, S_i, u_i))
    prodS = S_i[0] * S_i[1] * S_i[2]
    gs_unit = _same_up_to_unit(prodS * prodS, G * G)
    checks["G_eq_S0S1S2"] = gs_unit is not None
    checks["A_eq_N0N1N2"] = N_i[0] * N_i[1] * N_i[2] == A.monic()
    checks["s_sorted"] = s_i[0] >= s_i[1] >= s_i[2] >= 0

    conditions_hold = 2 * F.degree <= c.d - 1
    beta_l = None
    gamma = c.gamma
    if gamma is not None:
        # beta_l = f'(a_l) / gamma; the lc(f) factor is 1 for monic f
        g = embed(gamma, K)
        lf = embed(c.f.lc, K)
        beta_l = []
        for l in range(3):
            i, j = [x for x in range(3) if x != l]
            beta_l.append(lf * (alpha[l] - alpha[i]) * (alpha[l] - alpha[j]) / g)
        if conditions_hold:
            dF = F.derivative()
            G2 = G * G
            checks["beta1_eq_beta2"] = beta_l[1] == beta_l[2]
            checks["G2_eq_beta1_Fprime"] = G2 == dF.scale(beta_l[1])
    return Decomposition(
        K, alpha, F_i, N_i, S_i, u_i, s_i, beta_l, gs_unit or K.zero, conditions_hold, checks
    )
