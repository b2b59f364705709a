"""Dense univariate polynomials over GF(q).

Coefficients are stored little-endian with no trailing zeros, so the zero
polynomial is the empty tuple.  Its degree is ``NEG_INF``, a sentinel that
compares below every integer and absorbs addition, so degree identities on
the zero polynomial never silently produce a small integer.

Text grammar (see ``parse_poly``): sums of terms such as ``2*t^3``, ``t^2``,
``t``, ``5``, bracketed residue coefficients ``[1,2]*t^3`` for extension
fields, parentheses and integer powers of sub-expressions.
"""

from __future__ import annotations

import json
import re
from typing import Iterable

from .errors import BothZero, DivisionByZero, FieldMismatch, NonCubic, ParseError, ZeroInput
from .field import FieldElement, FieldSpec, embed, sqrt_in_field

__all__ = [
    "NEG_INF",
    "Polynomial",
    "poly_arith",
    "derivative",
    "gcd_monic",
    "compose",
    "is_squarefree",
    "poly_sqrt",
    "roots_in_field",
    "splitting_spec",
    "parse_poly",
    "embed_poly",
]


class _NegInf:
    """Degree of the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_NegInf, ())

    def __repr__(self):
        return "NEG_INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INF")

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("NEG_INF - NEG_INF is undefined")
        return self

    def __mul__(self, k):
        if isinstance(k, int) and k > 0:
            return self
        raise ArithmeticError("NEG_INF may only be scaled by a positive integer")

    __rmul__ = __mul__


NEG_INF = _NegInf()


class Polynomial:
    """Immutable dense polynomial over a FieldSpec."""

    __slots__ = ("spec", "_c")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        self.spec = spec
        enc = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise FieldMismatch(f"{c.spec} vs {spec}")
                enc.append(c._v)
            elif isinstance(c, int):
                enc.append(c % spec.p)
            else:
                enc.append(FieldElement(spec, c)._v)
        while enc and enc[-1] == 0:
            enc.pop()
        self._c = tuple(enc)

    @classmethod
    def _raw(cls, spec: FieldSpec, enc) -> "Polynomial":
        enc = list(enc)
        while enc and enc[-1] == 0:
            enc.pop()
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._c = tuple(enc)
        return obj

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Polynomial":
        return cls._raw(spec, ())

    @classmethod
    def constant(cls, spec: FieldSpec, c) -> "Polynomial":
        return cls(spec, [c])

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, c=1) -> "Polynomial":
        return cls(spec, [0] * k + [c])

    # -- basic accessors --

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement._wrap(self.spec, v) for v in self._c)

    def coeff(self, i: int) -> FieldElement:
        v = self._c[i] if 0 <= i < len(self._c) else 0
        return FieldElement._wrap(self.spec, v)

    @property
    def lc(self) -> FieldElement:
        return FieldElement._wrap(self.spec, self._c[-1] if self._c else 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.spec == other.spec and self._c == other._c
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial.constant(self.spec, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self._c))

    def sort_key(self):
        """(degree, leading coefficient, lower coefficients little-endian); zero sorts first."""
        if not self._c:
            return (-1, (), ())
        dig = self.spec.digits
        return (len(self._c) - 1, dig(self._c[-1]), tuple(dig(v) for v in self._c[:-1]))

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, {self.spec!r})"

    # -- arithmetic --

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial.constant(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        add = self.spec.add
        out = list(a)
        for i, v in enumerate(b):
            out[i] = add(out[i], v)
        return Polynomial._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.spec.neg
        return Polynomial._raw(self.spec, [neg(v) for v in self._c])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial.zero(self.spec)
        spec = self.spec
        if spec.n == 1:
            p = spec.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Polynomial._raw(spec, [v % p for v in out])
        add, mul = spec.add, spec.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial._raw(spec, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        if isinstance(c, FieldElement):
            if c.spec != self.spec:
                raise FieldMismatch(f"{c.spec} vs {self.spec}")
            c = c._v
        else:
            c = FieldElement(self.spec, c)._v
        mul = self.spec.mul
        return Polynomial._raw(self.spec, [mul(v, c) for v in self._c])

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not other._c:
            raise DivisionByZero("polynomial division by zero")
        spec = self.spec
        rem = list(self._c)
        db = len(other._c) - 1
        if len(rem) - 1 < db:
            return Polynomial.zero(spec), self
        inv = spec.inv(other._c[-1])
        quo = [0] * (len(rem) - db)
        b = other._c
        if spec.n == 1:
            p = spec.p
            for i in range(len(rem) - 1, db - 1, -1):
                c = rem[i] * inv % p
                if c:
                    quo[i - db] = c
                    base = i - db
                    for j in range(db + 1):
                        rem[base + j] = (rem[base + j] - c * b[j]) % p
        else:
            mul, sub = spec.mul, spec.sub
            for i in range(len(rem) - 1, db - 1, -1):
                c = mul(rem[i], inv)
                if c:
                    quo[i - db] = c
                    base = i - db
                    for j in range(db + 1):
                        rem[base + j] = sub(rem[base + j], mul(c, b[j]))
        return Polynomial._raw(spec, quo), Polynomial._raw(spec, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        """True when self | other (the zero polynomial divides only zero)."""
        if not self._c:
            return not other._c
        return (other % self).is_zero()

    def __call__(self, x) -> FieldElement:
        x = FieldElement(self.spec, x) if not isinstance(x, FieldElement) else x
        if x.spec != self.spec:
            raise FieldMismatch(f"{x.spec} vs {self.spec}")
        add, mul = self.spec.add, self.spec.mul
        acc = 0
        for v in reversed(self._c):
            acc = add(mul(acc, x._v), v)
        return FieldElement._wrap(self.spec, acc)

    def derivative(self) -> "Polynomial":
        spec = self.spec
        return Polynomial._raw(spec, [spec.mul(spec.scalar(i), v) for i, v in enumerate(self._c)][1:])

    def monic(self) -> "Polynomial":
        if not self._c:
            return self
        return self.scale(self.lc.inv())

    def compose(self, g: "Polynomial") -> "Polynomial":
        """self(g(t)) by Horner's rule."""
        g = self._check(g)
        acc = Polynomial.zero(self.spec)
        for v in reversed(self._c):
            acc = acc * g + FieldElement._wrap(self.spec, v)
        return acc

    def embed(self, target: FieldSpec) -> "Polynomial":
        if target == self.spec:
            return self
        return Polynomial(target, [embed(c, target) for c in self.coeffs])

    # -- serialization --

    def to_text(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        spec = self.spec
        p = spec.p
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            v = self._c[k]
            if not v:
                continue
            if v < p:
                sign = -1 if v > p // 2 else 1
                mag = p - v if sign < 0 else v
                ctext = str(mag)
            else:
                sign, mag = 1, None
                ctext = "[" + ",".join(map(str, spec.digits(v))) + "]"
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{ctext}*{mono}"
            else:
                body = ctext
            if not parts:
                parts.append(("-" if sign < 0 else "") + body)
            else:
                parts.append((" - " if sign < 0 else " + ") + body)
        return "".join(parts)

    def to_json(self) -> dict:
        return {"coeffs": [list(self.spec.digits(v)) for v in self._c]}

    @classmethod
    def from_json(cls, spec: FieldSpec, obj) -> "Polynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(spec, [FieldElement(spec, c) for c in obj["coeffs"]])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad polynomial JSON: {obj!r}") from exc


def poly_arith(a: Polynomial, b, op: str):
    """Dispatch add/sub/mul/divrem/scale; scale takes a field element as b."""
    if op == "add":
        return a + a._check(b)
    if op == "sub":
        return a - a._check(b)
    if op == "mul":
        return a * a._check(b)
    if op == "divrem":
        return divmod(a, a._check(b))
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def derivative(a: Polynomial) -> Polynomial:
    return a.derivative()


def compose(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.compose(g)


def gcd_monic(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by Euclid's algorithm."""
    b = a._check(b)
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    while b:
        a, b = b, a % b
    return a.monic()


def is_squarefree(a: Polynomial) -> bool:
    if a.is_zero():
        raise ZeroInput("square-freeness of the zero polynomial")
    return gcd_monic(a, a.derivative()).degree == 0


def poly_sqrt(a: Polynomial) -> Polynomial | None:
    """Square root of a in k[t], or None; lc of the root is the canonical field root.

    Coefficients are solved from the top down: with s = sum s_i t^i of degree m,
    the coefficient of t^(m+k) in s^2 is 2 s_m s_k plus products of coefficients
    above k, so each s_k is determined in turn.  The result is then verified.
    """
    spec = a.spec
    if a.is_zero():
        return a
    if a.degree % 2:
        return None
    top = sqrt_in_field(a.lc)
    if top is None:
        return None
    m = a.degree // 2
    add, mul, sub = spec.add, spec.mul, spec.sub
    s = [0] * (m + 1)
    s[m] = top._v
    inv2sm = spec.inv(mul(spec.scalar(2), s[m]))
    c = a._c
    for k in range(m - 1, -1, -1):
        acc = c[m + k]
        # i + j = m + k with k < i, j <= m, excluding i = m or j = m
        for i in range(k + 1, m):
            j = m + k - i
            if k < j < m:
                acc = sub(acc, mul(s[i], s[j]))
        s[k] = mul(acc, inv2sm)
    root = Polynomial._raw(spec, s)
    if root * root != a:
        return None
    return root


def embed_poly(a: Polynomial, target: FieldSpec) -> Polynomial:
    return a.embed(target)


def roots_in_field(a: Polynomial, target: FieldSpec | None = None) -> list[FieldElement]:
    """All roots of a in target (default: a's own field), with multiplicity.

    Exhaustive evaluation over the target field; roots are listed in
    ``repr`` order.
    """
    if a.is_zero():
        raise ZeroInput("roots of the zero polynomial")
    target = target or a.spec
    b = a.embed(target)
    out = []
    if b.degree <= 0:
        return out
    for x in target.elements():
        if b(x).is_zero():
            lin = Polynomial(target, [-x, 1])
            while b.degree >= 1:
                qq, r = divmod(b, lin)
                if r:
                    break
                out.append(x)
                b = qq
    out.sort(key=lambda e: e.repr)
    return out


def splitting_spec(f: Polynomial) -> FieldSpec:
    """Smallest GF(q^e), e in {1, 2, 3}, over which the cubic f splits.

    The number of base-field roots (with multiplicity) fixes the factor
    degrees: 3 roots -> e = 1, one root and an irreducible quadratic -> e = 2,
    no root -> irreducible cubic, e = 3.
    """
    if f.degree != 3:
        raise NonCubic(f"expected a cubic, got degree {f.degree}")
    spec = f.spec
    nroots = len(roots_in_field(f))
    e = {3: 1, 1: 2, 0: 3}[nroots]
    if e == 1:
        return spec
    return FieldSpec(spec.p, spec.n * e)


# -- parser --

_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[^\]]*\])|([A-Za-z])|(.))")


class _Parser:
    def __init__(self, text: str, spec: FieldSpec, var: str):
        self.spec = spec
        self.var = var
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, br, name, other = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif br is not None:
                self.tokens.append(("elem", br))
            elif name is not None:
                self.tokens.append(("var", name))
            elif other is not None and not other.isspace():
                self.tokens.append(("op", other))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "elem", "var") or (kind == "op" and val == "(")

    def term(self):
        acc = self.unary()
        while True:
            if self.peek() == ("op", "*"):
                self.take()
                acc = acc * self.unary()
            elif self._starts_factor():
                acc = acc * self.power()
            else:
                return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            return base**val
        return base

    def atom(self):
        kind, val = self.take()
        spec = self.spec
        if kind == "num":
            return Polynomial.constant(spec, val)
        if kind == "elem":
            try:
                digits = json.loads(val)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad coefficient {val}") from exc
            if not isinstance(digits, list) or len(digits) > spec.n:
                raise ParseError(f"bad coefficient {val} for {spec}")
            return Polynomial.constant(spec, FieldElement(spec, [int(d) for d in digits]))
        if kind == "var":
            if val != self.var:
                raise ParseError(f"unexpected variable {val!r}; expected {self.var!r}")
            return Polynomial.monomial(spec, 1)
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, spec: FieldSpec, var: str = "t") -> Polynomial:
    """Parse a polynomial in ``var`` over ``spec``; also accepts canonical JSON."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return Polynomial.from_json(spec, stripped)
    return _Parser(stripped, spec, var).parse()
