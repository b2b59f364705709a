"""Exact arithmetic in GF(p^n) for odd primes p.

Elements of GF(p^n) = GF(p)[x]/(m(x)) are residue polynomials
c_0 + c_1 x + ... + c_{n-1} x^{n-1}.  The public representation of an
element is the little-endian tuple (c_0, ..., c_{n-1}) (``FieldElement.repr``);
internally an element is stored as the integer c_0 + c_1 p + ... + c_{n-1} p^{n-1},
which keeps polynomial coefficient vectors cheap to store and hash.

For n > 1 and moderate q, multiplication and addition go through
exponential/logarithm/Zech tables built lazily on first use.  Larger
fields fall back to schoolbook residue arithmetic.
"""

from __future__ import annotations

import itertools
import json
import re
import threading
from typing import Iterable, Iterator, Sequence

from .errors import DivisionByZero, FieldMismatch, InvalidField, NoEmbedding, ParseError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field_arith",
    "sqrt_in_field",
    "embed",
    "parse_field",
    "is_prime",
    "prime_power",
]

# fields with q above this use residue arithmetic instead of log tables
TABLE_LIMIT = 1 << 17


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, n) with q = p**n and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return (q, 1)
    n = 0
    while q % p == 0:
        q //= p
        n += 1
    return (p, n) if q == 1 else None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- small helpers for polynomials over Z/p given as little-endian int lists --

def _zp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    # m is monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            base = i - dm
            for j in range(dm + 1):
                a[base + j] = (a[base + j] - c * m[j]) % p
    return _zp_trim(a[:dm])


def _zp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zp_trim([c % p for c in out])


def _zp_powmod(a: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    a = _zp_mod(a, m, p)
    while e:
        if e & 1:
            result = _zp_mod(_zp_mul(result, a, p), m, p)
        e >>= 1
        if e:
            a = _zp_mod(_zp_mul(a, a, p), m, p)
    return result


def _zp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
        a = _zp_mod(a, b, p)
        a, b = b, a
    return a


def _zp_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _zp_trim([(x - y) % p for x, y in zip(a, b)])


def _zp_irreducible(m: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic m over GF(p)."""
    n = len(m) - 1
    if n == 1:
        return True
    x = [0, 1]
    if _zp_sub(_zp_powmod(x, p**n, m, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _zp_sub(_zp_powmod(x, p ** (n // r), m, p), x, p)
        if len(_zp_gcd(list(m), h, p)) != 1:
            return False
    return True


def _default_modulus(p: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    # itertools.product varies the last slot fastest, i.e. little-endian lex order
    for low in itertools.product(range(p), repeat=n):
        m = low + (1,)
        if _zp_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """The finite field GF(p^n) with a fixed defining modulus.

    Instances compare equal when (p, n, modulus) agree.  They are
    immutable; lazily built lookup tables are private caches.
    """

    __slots__ = ("p", "n", "modulus", "q", "_tables", "_nonresidue", "_lock", "__weakref__")

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidField(f"characteristic {p!r} is not prime")
        if p == 2:
            raise InvalidField("characteristic 2 is not supported")
        if not isinstance(n, int) or n < 1:
            raise InvalidField(f"extension degree must be >= 1, got {n!r}")
        if modulus is None:
            mod = _default_modulus(p, n)
        else:
            mod = tuple(int(c) for c in modulus)
            if len(mod) != n + 1 or mod[-1] % p != 1:
                raise InvalidField(f"modulus must be monic of degree {n}")
            if any(not 0 <= c < p for c in mod):
                raise InvalidField("modulus coefficients must lie in [0, p)")
            if n == 1:
                mod = (0, 1)
            elif not _zp_irreducible(mod, p):
                raise InvalidField(f"modulus {list(mod)} is reducible over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", p**n)
        object.__setattr__(self, "_tables", None)
        object.__setattr__(self, "_nonresidue", None)
        object.__setattr__(self, "_lock", threading.Lock())

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __reduce__(self):
        return (FieldSpec, (self.p, self.n, self.modulus))

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}; modulus={list(self.modulus)})"

    # -- construction helpers --

    @classmethod
    def from_order(cls, q: int) -> "FieldSpec":
        pn = prime_power(q)
        if pn is None:
            raise InvalidField(f"{q} is not a prime power")
        return cls(*pn)

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj["p"]), int(obj.get("n", 1)), obj.get("modulus"))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad field JSON: {obj!r}") from exc

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def to_text(self) -> str:
        if self.n == 1:
            return str(self.p)
        text = f"{self.p}^{self.n}"
        if self.modulus != _default_modulus(self.p, self.n):
            text += ";modulus=[" + ",".join(map(str, self.modulus)) + "]"
        return text

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement._wrap(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement._wrap(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement._wrap(self, v)

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        for v in range(1, self.q):
            yield FieldElement._wrap(self, v)

    # -- encoded-int arithmetic used by FieldElement and Polynomial --

    def digits(self, v: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            v, c = divmod(v, p)
            out.append(c)
        return tuple(out)

    def from_digits(self, ds: Iterable[int]) -> int:
        v = 0
        p = self.p
        for c in reversed(list(ds)):
            v = v * p + c % p
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _zp_mul(_zp_trim(list(self.digits(a))), _zp_trim(list(self.digits(b))), self.p)
        return self.from_digits(_zp_mod(prod, self.modulus, self.p))

    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        return self.from_digits((x + y) % p for x, y in zip(self.digits(a), self.digits(b)))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return r

    def _get_tables(self):
        tables = self._tables
        if tables is not None:
            return tables
        with self._lock:
            if self._tables is None:
                object.__setattr__(self, "_tables", self._build_tables())
        return self._tables

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        for g in range(2, q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                break
        exp = [0] * order
        log = [0] * q
        cur = 1
        for k in range(order):
            exp[k] = cur
            log[cur] = k
            cur = self._slow_mul(cur, g)
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
        zech = [0] * order
        for k in range(order):
            s = self._slow_add(1, exp[k])
            zech[k] = log[s] if s else -1
        return exp, log, zech

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        if self.q > TABLE_LIMIT:
            return self._slow_add(a, b)
        exp, log, zech = self._get_tables()
        la = log[a]
        z = zech[(log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return exp[(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        p = self.p
        return self.from_digits(-c % p for c in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self.q > TABLE_LIMIT:
            return self._slow_mul(a, b)
        exp, log, _ = self._get_tables()
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return pow(a, -1, self.p)
        if self.q > TABLE_LIMIT:
            return self._slow_pow(a, self.q - 2)
        exp, log, _ = self._get_tables()
        return exp[-log[a] % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.n == 1:
            return pow(a, e, self.p)
        if not a:
            return 1 if e == 0 else 0
        if self.q > TABLE_LIMIT:
            return self._slow_pow(a, e)
        exp, log, _ = self._get_tables()
        return exp[log[a] * e % (self.q - 1)]

    def scalar(self, k: int) -> int:
        """Encoding of the image of the integer k in the prime subfield."""
        return k % self.p

    def nonresidue(self) -> "FieldElement":
        """Smallest-encoded non-square, used by Tonelli-Shanks."""
        if self._nonresidue is None:
            half = (self.q - 1) // 2
            for v in range(2, self.q):
                if self.pow(v, half) != 1:
                    object.__setattr__(self, "_nonresidue", v)
                    break
        return FieldElement._wrap(self, self._nonresidue)


class FieldElement:
    """An element of a FieldSpec; immutable and hashable."""

    __slots__ = ("spec", "_v")

    def __init__(self, spec: FieldSpec, value=0):
        self.spec = spec
        if isinstance(value, FieldElement):
            if value.spec != spec:
                raise FieldMismatch(f"{value.spec} vs {spec}")
            self._v = value._v
        elif isinstance(value, int):
            self._v = value % spec.p
        else:
            ds = list(value)
            if len(ds) > spec.n:
                raise InvalidField(f"too many residue coefficients for {spec}")
            self._v = spec.from_digits(int(c) for c in ds)

    @classmethod
    def _wrap(cls, spec: FieldSpec, v: int) -> "FieldElement":
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._v = v
        return obj

    @property
    def repr(self) -> tuple[int, ...]:
        return self.spec.digits(self._v)

    def is_zero(self) -> bool:
        return self._v == 0

    def __bool__(self):
        return self._v != 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other._v
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self._v == other._v
        if isinstance(other, int):
            return self._v == other % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self._v))

    def __lt__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.repr < other.repr

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement._wrap(self.spec, self.spec.add(self._v, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement._wrap(self.spec, self.spec.sub(self._v, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement._wrap(self.spec, self.spec.sub(b, self._v))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement._wrap(self.spec, self.spec.mul(self._v, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement._wrap(self.spec, self.spec.mul(self._v, self.spec.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement._wrap(self.spec, self.spec.mul(b, self.spec.inv(self._v)))

    def __neg__(self):
        return FieldElement._wrap(self.spec, self.spec.neg(self._v))

    def __pow__(self, e: int):
        return FieldElement._wrap(self.spec, self.spec.pow(self._v, e))

    def inv(self) -> "FieldElement":
        return FieldElement._wrap(self.spec, self.spec.inv(self._v))

    def is_square(self) -> bool:
        return self._v == 0 or self.spec.pow(self._v, (self.spec.q - 1) // 2) == 1

    def to_text(self) -> str:
        if self.spec.n == 1:
            return str(self._v)
        return "[" + ",".join(map(str, self.repr)) + "]"

    def __int__(self):
        if self.spec.n != 1 and self._v >= self.spec.p:
            raise ValueError("element is not in the prime subfield")
        return self._v

    def __repr__(self):
        return f"{self.to_text()} in {self.spec!r}"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch one of add/sub/mul/div/neg/inv/pow; for pow, b is an int."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError("pow takes a non-negative integer exponent")
        return a**b
    if isinstance(b, FieldElement) and b.spec != a.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def sqrt_in_field(a: FieldElement) -> FieldElement | None:
    """Canonical square root of a, or None when a is not a square.

    Of the two roots {s, -s} the one with the smaller ``repr`` is returned.
    """
    spec = a.spec
    if a.is_zero():
        return a
    q = spec.q
    if spec.pow(a._v, (q - 1) // 2) != 1:
        return None
    if q % 4 == 3:
        s = a ** ((q + 1) // 4)
    else:
        # Tonelli-Shanks over q - 1 = 2^e * odd
        odd, e = q - 1, 0
        while odd % 2 == 0:
            odd //= 2
            e += 1
        c = spec.nonresidue() ** odd
        t = a**odd
        s = a ** ((odd + 1) // 2)
        m = e
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            s = s * b
            c = b * b
            t = t * c
            m = i
    if s * s != a:  # pragma: no cover - guarded by Euler's criterion
        raise AssertionError("square root failed")
    return min(s, -s, key=lambda x: x.repr)


_EMBED_CACHE: dict[tuple[FieldSpec, FieldSpec], FieldElement] = {}
_EMBED_LOCK = threading.Lock()


def _generator_image(source: FieldSpec, target: FieldSpec) -> FieldElement:
    key = (source, target)
    img = _EMBED_CACHE.get(key)
    if img is not None:
        return img
    root = None
    mod = [FieldElement._wrap(target, c) for c in source.modulus]
    for x in target.elements():
        acc = target.zero
        for c in reversed(mod):
            acc = acc * x + c
        if acc.is_zero():
            root = x
            break
    if root is None:  # pragma: no cover - impossible when n | m
        raise NoEmbedding(f"no root of the modulus of {source} in {target}")
    with _EMBED_LOCK:
        return _EMBED_CACHE.setdefault(key, root)


def embed(a: FieldElement, target: FieldSpec) -> FieldElement:
    """Image of a under the field embedding source -> target."""
    source = a.spec
    if source == target:
        return a
    if source.p != target.p or target.n % source.n != 0:
        raise NoEmbedding(f"{source} does not embed into {target}")
    if source.n == 1:
        return FieldElement._wrap(target, a._v)
    root = _generator_image(source, target)
    acc = target.zero
    for c in reversed(a.repr):
        acc = acc * root + c
    return acc


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:;\s*modulus\s*=\s*(\[[^\]]*\]))?\s*$")


def parse_field(text: str) -> FieldSpec:
    """Parse "p", "p^n" or "p^n;modulus=[c0,...,1]", or the JSON form."""
    text = text.strip()
    if text.startswith("{"):
        return FieldSpec.from_json(text)
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse field {text!r}")
    p = int(m.group(1))
    n = int(m.group(2)) if m.group(2) else 1
    modulus = json.loads(m.group(3)) if m.group(3) else None
    return FieldSpec(p, n, modulus)
