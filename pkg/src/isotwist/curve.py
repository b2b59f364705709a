"""Elliptic curves y^2 = f(x) over GF(q) and their quadratic twists A(t) y^2 = f(x).

An integral point on the twist is a pair (F, G) of polynomials in t with
A G^2 = f(F).  Such a pair is the same thing as the morphism
(s, t) -> (F(t), s G(t)) from the hyperelliptic curve s^2 = A(t) to E whose
poles all sit over the point at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConstantPoint, FieldTooLarge, InvalidCurve, NotOnCurve
from .field import FieldElement, FieldSpec
from .poly import Polynomial, gcd_monic, is_squarefree

__all__ = [
    "EllipticCurve",
    "TwistedCurve",
    "IntegralPoint",
    "MorphismSummary",
    "validate_point",
    "j_invariant",
    "count_points_affine_plus_infinity",
    "morphism_view",
    "POINT_COUNT_CAP",
]

POINT_COUNT_CAP = 10**4


@dataclass(frozen=True)
class EllipticCurve:
    f: Polynomial

    def __post_init__(self):
        if self.f.degree != 3:
            raise InvalidCurve(f"f must be cubic, got degree {self.f.degree}")
        if gcd_monic(self.f, self.f.derivative()).degree != 0:
            raise InvalidCurve(f"f = {self.f.to_text('x')} has a repeated root")

    @property
    def spec(self) -> FieldSpec:
        return self.f.spec

    def to_json(self) -> dict:
        return {"field": self.spec.to_text(), "f": self.f.to_text("x")}


@dataclass(frozen=True)
class TwistedCurve:
    """The curve A(t) y^2 = f(x) over GF(q)(t)."""

    E: EllipticCurve
    A: Polynomial

    def __post_init__(self):
        if self.A.spec != self.E.spec:
            raise InvalidCurve("A and f live over different fields")
        if self.A.is_zero() or not is_squarefree(self.A):
            raise InvalidCurve(f"A = {self.A.to_text()} is not square-free")
        d = self.A.degree
        if d <= 1 or d % 2 == 0:
            raise InvalidCurve(f"deg A must be odd and > 1, got {d}")

    @classmethod
    def from_polys(cls, A: Polynomial, f: Polynomial) -> "TwistedCurve":
        return cls(EllipticCurve(f), A)

    @property
    def spec(self) -> FieldSpec:
        return self.A.spec

    @property
    def f(self) -> Polynomial:
        return self.E.f

    @property
    def d(self) -> int:
        return self.A.degree

    @property
    def genus(self) -> int:
        return (self.d - 1) // 2

    @property
    def gamma(self) -> FieldElement | None:
        """A' when it is a nonzero constant, else None."""
        dA = self.A.derivative()
        if dA.degree == 0:
            return dA.lc
        return None

    def to_json(self) -> dict:
        return {"field": self.spec.to_text(), "A": self.A.to_text("t"), "f": self.f.to_text("x")}

    def label(self) -> str:
        return f"({self.A.to_text('t')})*y^2 = {self.f.to_text('x')} over GF({self.spec.q})"


@dataclass(frozen=True)
class IntegralPoint:
    F: Polynomial
    G: Polynomial
    kind: str = field(compare=False)

    @property
    def is_separable(self) -> bool:
        return self.kind == "separable"

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    def negate(self) -> "IntegralPoint":
        """Image under the hyperelliptic involution (t, s) -> (t, -s)."""
        return IntegralPoint(self.F, -self.G, self.kind)

    def sort_key(self):
        return (self.F.sort_key(), self.G.sort_key())

    def to_json(self) -> dict:
        return {"F": self.F.to_text("t"), "G": self.G.to_text("t"), "class": self.kind}


def classify(F: Polynomial, G: Polynomial) -> str:
    if F.degree <= 0 and G.degree <= 0:
        return "constant"
    return "separable" if not F.derivative().is_zero() else "inseparable"


def validate_point(c: TwistedCurve, F: Polynomial, G: Polynomial) -> IntegralPoint:
    """Check A G^2 = f(F) exactly and classify the point."""
    if F.spec != c.spec or G.spec != c.spec:
        raise NotOnCurve("point coordinates live over a different field")
    lhs = c.A * G * G
    rhs = c.f.compose(F)
    if lhs != rhs:
        raise NotOnCurve(f"A*G^2 != f(F) for F = {F.to_text()}, G = {G.to_text()}")
    kind = classify(F, G)
    if kind != "constant":
        assert c.d + 2 * G.degree == 3 * F.degree, "degree identity failed"
    return IntegralPoint(F, G, kind)


def _monic_model(f: Polynomial):
    """(a2, a4, a6) of Y^2 = X^3 + a2 X^2 + a4 X + a6 with X = c3 x, Y = c3 y."""
    c0, c1, c2, c3 = (f.coeff(i) for i in range(4))
    return c2, c1 * c3, c0 * c3 * c3


def j_invariant(E: EllipticCurve) -> FieldElement:
    a2, a4, a6 = _monic_model(E.f)
    b2 = 4 * a2
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4 * c4 * c4 / disc


def j1728(spec: FieldSpec) -> FieldElement:
    """Image of the integer 1728 in the field (0 in characteristic 3)."""
    return FieldElement(spec, 1728)


def quadratic_character(a: FieldElement) -> int:
    if a.is_zero():
        return 0
    return 1 if a.is_square() else -1


def count_points_affine_plus_infinity(E: EllipticCurve, cap: int = POINT_COUNT_CAP) -> int:
    """#E(GF(q)) by summing 1 + chi(f(x)) over x, plus the point at infinity."""
    q = E.spec.q
    if q > cap:
        raise FieldTooLarge(f"q = {q} exceeds the point-count cap {cap}")
    total = 1 + sum(1 + quadratic_character(E.f(x)) for x in E.spec.elements())
    # Hasse: |N - q - 1| <= 2 sqrt(q), checked in integers as (N - q - 1)^2 <= 4q
    assert (total - q - 1) ** 2 <= 4 * q, "point count outside the Hasse interval"
    return total


@dataclass(frozen=True)
class MorphismSummary:
    formula: tuple[str, str]
    degree: int
    separable: bool
    degree_cap: int | None

    def to_json(self) -> dict:
        return {
            "formula": list(self.formula),
            "degree": self.degree,
            "separable": self.separable,
            "degree_cap": self.degree_cap,
        }


def morphism_view(c: TwistedCurve, P: IntegralPoint) -> MorphismSummary:
    """Describe P as the morphism (s, t) -> (F(t), s G(t)).

    Its degree is deg F: both k(t,s)/k(t) and k(x,y)/k(x) have degree 2,
    and k(t)/k(x) has degree deg F.  For separable points the degree is
    capped by |S| + 4(g - 1) = 2d - 5 with S the single point at infinity.
    """
    if P.is_constant:
        raise ConstantPoint("constant points do not give non-constant morphisms")
    deg = P.F.degree
    cap = None
    if P.is_separable:
        cap = 1 + 4 * (c.genus - 1)
        assert deg <= cap, f"separable morphism of degree {deg} exceeds cap {cap}"
    gtext = P.G.to_text("t")
    stext = "s" if gtext == "1" else f"s*({gtext})"
    return MorphismSummary((P.F.to_text("t"), stext), deg, P.is_separable, cap)


def hasse_interval(q: int) -> tuple[int, int]:
    r = math.isqrt(4 * q)
    return q + 1 - r, q + 1 + r
