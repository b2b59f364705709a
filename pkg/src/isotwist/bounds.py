"""Lattice point counts and the degree/count bounds built on them.

Membership decisions for lattice enumeration are exact: the Gram matrix is
factored as L D L^T over the rationals and the quadratic form is written as
a sum of D_k (x_k + sum_{a>k} L_{ak} x_a)^2, which bounds each coordinate in
turn (Fincke-Pohst).  Only the final bound value is ever a float.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidDegree, InvalidField, InvalidGenus, InvalidLattice
from .field import prime_power

__all__ = [
    "LatticeSpec",
    "LatticeCheck",
    "min_norm",
    "count_lattice_points",
    "lattice_points",
    "lemma_bound",
    "lemma_bound_upper",
    "check_lemma_latt",
    "lang_bound",
    "rh_degree_cap",
    "combined_lang_bound",
    "twist_bound",
    "random_positive_definite",
]

_SQRT_SCALE = 10**12


def _as_fraction(T) -> Fraction:
    if isinstance(T, float):
        return Fraction(T).limit_denominator(10**9)
    return Fraction(T)


@dataclass(frozen=True)
class LatticeSpec:
    """Z^r with the quadratic form q(x) = x^T gram x."""

    gram: tuple[tuple[int, ...], ...]
    _ldl: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in gram)
        r = len(rows)
        if r < 1 or any(len(row) != r for row in rows):
            raise InvalidLattice("Gram matrix must be square and non-empty")
        if any(rows[i][j] != rows[j][i] for i in range(r) for j in range(r)):
            raise InvalidLattice("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", rows)
        L, D = _ldl(rows)
        # D_k > 0 for all k iff every leading principal minor is positive
        if any(dk <= 0 for dk in D):
            raise InvalidLattice("Gram matrix is not positive definite")
        object.__setattr__(self, "_ldl", (L, D))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def norm(self, x: Sequence[int]) -> int:
        g = self.gram
        r = len(g)
        return sum(x[i] * g[i][j] * x[j] for i in range(r) for j in range(r))

    def leading_minors(self) -> list[Fraction]:
        out, acc = [], Fraction(1)
        for dk in self._ldl[1]:
            acc *= dk
            out.append(acc)
        return out


def _ldl(gram):
    r = len(gram)
    gram = [[Fraction(v) for v in row] for row in gram]
    L = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    D = [Fraction(0)] * r
    for j in range(r):
        D[j] = gram[j][j] - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if D[j] <= 0:
            return L, D
        for i in range(j + 1, r):
            L[i][j] = (gram[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D


def lattice_points(lat: LatticeSpec, T) -> Iterator[tuple[int, ...]]:
    """All x in Z^r with q(x) <= T."""
    T = _as_fraction(T)
    if T < 0:
        return
    L, D = lat._ldl
    r = lat.rank
    x = [0] * r

    def rec(k: int, remaining: Fraction):
        c = sum((L[a][k] * x[a] for a in range(k + 1, r)), Fraction(0))
        bound = remaining / D[k]
        s = math.isqrt(math.floor(bound)) + 1
        lo = math.floor(-c) - s
        hi = math.ceil(-c) + s
        for v in range(lo, hi + 1):
            part = D[k] * (v + c) ** 2
            if part <= remaining:
                x[k] = v
                if k == 0:
                    yield tuple(x)
                else:
                    yield from rec(k - 1, remaining - part)
        x[k] = 0

    yield from rec(r - 1, T)


def count_lattice_points(lat: LatticeSpec, T) -> int:
    return sum(1 for _ in lattice_points(lat, T))


def min_norm(lat: LatticeSpec) -> int:
    """Smallest q(x) over nonzero x, searching radii 1, 2, 4, ... until a vector appears."""
    cap = min(lat.gram[i][i] for i in range(lat.rank))
    radius = 1
    while True:
        radius = min(radius, cap)
        norms = [lat.norm(x) for x in lattice_points(lat, radius) if any(x)]
        if norms:
            return min(norms)
        radius *= 2


def lemma_bound(T, lam, r: int) -> float:
    """(2 sqrt(T / lam) + 1)^r."""
    T, lam = _as_fraction(T), _as_fraction(lam)
    if lam <= 0 or T < 0 or r < 0:
        raise ValueError("need lam > 0, T >= 0, r >= 0")
    return (2 * math.sqrt(T / lam) + 1) ** r


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational >= sqrt(x), exact when x is a rational square."""
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    scaled = num * den * _SQRT_SCALE**2
    return Fraction(math.isqrt(scaled) + 1, den * _SQRT_SCALE)


def lemma_bound_upper(T, lam, r: int) -> Fraction:
    """Exact rational upper evaluation of (2 sqrt(T / lam) + 1)^r."""
    T, lam = _as_fraction(T), _as_fraction(lam)
    return (2 * _sqrt_upper(T / lam) + 1) ** r


@dataclass(frozen=True)
class LatticeCheck:
    ok: bool
    count: int
    lam: int
    bound: float
    n: int
    injective: bool
    witness: tuple | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "count": self.count,
            "lambda": self.lam,
            "bound": self.bound,
            "n": self.n,
            "injective": self.injective,
            "witness": None if self.witness is None else [list(w) for w in self.witness],
        }


def check_lemma_latt(lat: LatticeSpec, T) -> LatticeCheck:
    """Count vectors with q(x) <= T against the bound, and test that they stay
    distinct modulo n for the least integer n > sqrt(4T / lambda)."""
    T = _as_fraction(T)
    lam = min_norm(lat)
    pts = list(lattice_points(lat, T))
    count = len(pts)
    within = count <= lemma_bound_upper(T, lam, lat.rank)
    n = math.isqrt(math.floor(4 * T / lam)) + 1
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    witness = None
    for x in pts:
        key = tuple(v % n for v in x)
        if key in seen:
            witness = (seen[key], x)
            break
        seen[key] = x
    injective = witness is None
    return LatticeCheck(within and injective, count, lam, lemma_bound(T, lam, lat.rank), n, injective, witness)


def lang_bound(g: int, s: int, r: int) -> float:
    """(2 sqrt(s + 4(g - 1)) + 1)^r, the count bound with lambda >= 1."""
    if g < 1:
        raise InvalidGenus(f"genus must be >= 1, got {g}")
    if s < 1:
        raise ValueError(f"|S| must be >= 1, got {s}")
    return lemma_bound(s + 4 * (g - 1), 1, r)


def rh_degree_cap(g: int, s: int) -> int:
    """Largest degree of a separable S-integral morphism: |S| + 4(g - 1)."""
    if g < 1:
        raise InvalidGenus(f"genus must be >= 1, got {g}")
    if s < 1:
        raise ValueError(f"|S| must be >= 1, got {s}")
    return s + 4 * (g - 1)


def combined_lang_bound(g: int, s: int) -> float:
    """lang_bound with the rank replaced by its maximum 4g."""
    return lang_bound(g, s, 4 * g)


def twist_bound(q: int, d: int) -> int:
    """q^(2d - 3) = q^(d-1) * q^(d-2), as an exact integer."""
    if d <= 1 or d % 2 == 0:
        raise InvalidDegree(f"d must be odd and > 1, got {d}")
    pn = prime_power(q)
    if pn is None or pn[0] == 2:
        raise InvalidField(f"q = {q} is not an odd prime power")
    return q ** (2 * d - 3)


def random_positive_definite(rng: random.Random, r: int, max_entry: int = 10) -> list[list[int]]:
    """Rejection-sample a symmetric positive-definite integer matrix with |entries| <= max_entry."""
    while True:
        g = [[0] * r for _ in range(r)]
        for i in range(r):
            g[i][i] = rng.randint(1, max_entry)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-max_entry, max_entry)
        try:
            LatticeSpec(g)
        except InvalidLattice:
            continue
        return g
