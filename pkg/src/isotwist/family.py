"""The explicit family (t^q - t) y^2 = x^3 - x and twists with constant A'.

For q = 3 (mod 4) the point (t^((q-1)/2), t^((q-3)/4)) lies on
(t^q - t) y^2 = x^3 - x: both sides equal t^((3q-3)/2) - t^((q-1)/2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .curve import IntegralPoint, TwistedCurve, j1728, j_invariant, validate_point
from .errors import BadResidue, InvalidDegree, Unrealizable
from .field import FieldSpec
from .poly import Polynomial, is_squarefree
from .theorems import check_conditions, check_lemma_gdf

__all__ = ["FamilyInstance", "family_instance", "gen_constant_derivative_A", "all_constant_derivative_A"]


@dataclass
class FamilyInstance:
    q: int
    curve: TwistedCurve
    point: IntegralPoint
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "curve": self.curve.to_json(),
            "point": self.point.to_json(),
            "checks": dict(self.checks),
            "ok": self.ok,
        }


def family_instance(q: int) -> FamilyInstance:
    spec = FieldSpec.from_order(q)
    if q % 4 != 3:
        raise BadResidue(f"q = {q} is not 3 mod 4")
    t = Polynomial.monomial(spec, 1)
    A = t**q - t
    f = Polynomial(spec, [0, -1, 0, 1])
    curve = TwistedCurve.from_polys(A, f)
    F = t ** ((q - 1) // 2)
    G = t ** ((q - 3) // 4)
    P = validate_point(curve, F, G)
    lemma = check_lemma_gdf(curve, P)
    cond = check_conditions(curve, P)
    checks = {
        "on_curve": True,
        "separable": P.is_separable,
        "G_divides_Fprime": lemma.g_divides_fprime,
        "degree_window": lemma.lower_ok and lemma.upper_ok,
        "condA": cond.condA,
        "condB": cond.condB,
        "condC": cond.condC,
        "beta_is_minus_2": cond.beta == -2,
        "j_is_1728": j_invariant(curve.E) == j1728(spec),
    }
    inst = FamilyInstance(q, curve, P, checks)
    assert inst.ok, f"family instance q={q} failed: {checks}"
    return inst


def _constant_derivative_space(spec: FieldSpec, d: int):
    if d <= 1 or d % 2 == 0:
        raise InvalidDegree(f"d must be odd and > 1, got {d}")
    p = spec.p
    if d % p:
        # A' constant forces every exponent of A into {1} or pZ
        raise Unrealizable(f"no degree-{d} polynomial over GF({spec.q}) has constant nonzero derivative")
    return d // p


def _build(spec: FieldSpec, d: int, gamma: int, lower: tuple[int, ...], lc: int) -> Polynomial:
    p = spec.p
    coeffs = [0] * (d + 1)
    for k, c in enumerate(lower + (lc,)):
        coeffs[p * k] = c
    coeffs[1] = spec.add(coeffs[1], gamma)
    return Polynomial._raw(spec, coeffs)


def all_constant_derivative_A(spec: FieldSpec, d: int, monic: bool = True) -> list[Polynomial]:
    """Every square-free A = gamma t + C(t^p) of degree d (monic if requested)."""
    top = _constant_derivative_space(spec, d)
    lcs = [1] if monic else range(1, spec.q)
    out = []
    for lc in lcs:
        for lower in itertools.product(range(spec.q), repeat=top):
            for gamma in range(1, spec.q):
                A = _build(spec, d, gamma, lower, lc)
                if is_squarefree(A):
                    out.append(A)
    return out


def gen_constant_derivative_A(spec: FieldSpec, d: int, count: int, seed: int = 0) -> list[Polynomial]:
    """Up to ``count`` distinct square-free A of degree d with A' a nonzero constant.

    Candidates are gamma t + C(t^p) with gamma != 0 and deg C = d / p, drawn
    without replacement from a ``random.Random(seed)``.
    """
    top = _constant_derivative_space(spec, d)
    q = spec.q
    total = (q - 1) * (q - 1) * q**top
    rng = random.Random(seed)
    picks = range(total) if count >= total else sorted(rng.sample(range(total), count))
    out = []
    for idx in picks:
        idx, g = divmod(idx, q - 1)
        idx, lc = divmod(idx, q - 1)
        lower = []
        for _ in range(top):
            idx, c = divmod(idx, q)
            lower.append(c)
        A = _build(spec, d, g + 1, tuple(lower), lc + 1)
        if is_squarefree(A):
            out.append(A)
    return out
