"""Polynomials over GF(2) and arithmetic in the extension fields GF(2^s).

A binary polynomial is stored as a Python int whose bit ``i`` is the
coefficient of ``x**i``.  :class:`BinPoly` wraps that int so degrees,
serialization and the usual operators are explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

from .errors import ClusterCodeError

# Degree of the zero polynomial.  Deliberately not an int (and not -1) so a
# comparison against a real degree can never silently succeed.
ZERO_DEGREE = float("-inf")

# Primitive moduli for GF(2^s), s = 1..16, as exponent lists.
_DEFAULT_MODULI = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 6, 4, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 10, 6, 1, 0),
    15: (15, 1, 0),
    16: (16, 12, 3, 1, 0),
}


def _deg(a: int) -> int:
    return a.bit_length() - 1


def _mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _divmod(a: int, m: int) -> tuple[int, int]:
    if m == 0:
        raise ZeroDivisionError("polynomial division by zero")
    dm = _deg(m)
    q = 0
    while a and _deg(a) >= dm:
        shift = _deg(a) - dm
        q ^= 1 << shift
        a ^= m << shift
    return q, a


def _mod(a: int, m: int) -> int:
    dm = _deg(m)
    while a and _deg(a) >= dm:
        a ^= m << (_deg(a) - dm)
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_mul(a, b), m)


def _powmod(a: int, e: int, m: int) -> int:
    result = 1
    a = _mod(a, m)
    while e:
        if e & 1:
            result = _mulmod(result, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return _mod(result, m)


@dataclass(frozen=True, order=True)
class BinPoly:
    """Polynomial over GF(2); ``bits`` holds the coefficients, LSB = x**0."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient bits must be non-negative")

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> BinPoly:
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_string(cls, text: str) -> BinPoly:
        """Parse the lowest-degree-first bit string, e.g. ``"1101"`` = 1+x+x^3."""
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a coefficient bit string: {text!r}")
        return cls(int(text[::-1], 2))

    @classmethod
    def all_ones(cls, n: int) -> BinPoly:
        """1 + x + ... + x^(n-1)."""
        return cls((1 << n) - 1)

    @classmethod
    def x_power(cls, n: int) -> BinPoly:
        return cls(1 << n)

    @property
    def degree(self) -> int | float:
        return _deg(self.bits) if self.bits else ZERO_DEGREE

    @property
    def coefficients(self) -> tuple[int, ...]:
        if not self.bits:
            return ()
        return tuple((self.bits >> i) & 1 for i in range(_deg(self.bits) + 1))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: BinPoly) -> BinPoly:
        return BinPoly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: BinPoly) -> BinPoly:
        return BinPoly(_mul(self.bits, other.bits))

    def __divmod__(self, other: BinPoly) -> tuple[BinPoly, BinPoly]:
        q, r = _divmod(self.bits, other.bits)
        return BinPoly(q), BinPoly(r)

    def __floordiv__(self, other: BinPoly) -> BinPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: BinPoly) -> BinPoly:
        if other.bits == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return BinPoly(_mod(self.bits, other.bits))

    def __pow__(self, e: int) -> BinPoly:
        result = 1
        for _ in range(e):
            result = _mul(result, self.bits)
        return BinPoly(result)

    def divides(self, other: BinPoly) -> bool:
        return _mod(other.bits, self.bits) == 0

    def derivative(self) -> BinPoly:
        # Over GF(2) only odd-degree terms survive: d/dx x^k = k x^(k-1).
        bits = 0
        b = self.bits >> 1
        i = 0
        while b:
            if b & 1 and i % 2 == 0:
                bits |= 1 << i
            b >>= 1
            i += 1
        return BinPoly(bits)

    def evaluate(self, x: int) -> int:
        """Value at x in GF(2)."""
        if x & 1:
            return bin(self.bits).count("1") & 1
        return self.bits & 1

    def to_string(self) -> str:
        if not self.bits:
            return "0"
        return format(self.bits, "b")[::-1]

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"BinPoly({self.to_string()!r})"


def _as_poly(f: BinPoly | int) -> BinPoly:
    return f if isinstance(f, BinPoly) else BinPoly(f)


def poly_gcd(a: BinPoly, b: BinPoly) -> BinPoly:
    """Monic gcd; over GF(2) every nonzero polynomial is already monic."""
    return BinPoly(_gcd(_as_poly(a).bits, _as_poly(b).bits))


def is_square_free(f: BinPoly) -> bool:
    f = _as_poly(f)
    if not f:
        raise ValueError("square-freeness of the zero polynomial is undefined")
    return poly_gcd(f, f.derivative()).degree == 0


def is_irreducible(f: BinPoly) -> bool:
    """Trial division by every polynomial of degree 1..deg(f)//2."""
    f = _as_poly(f)
    if f.degree < 1:
        raise ValueError("irreducibility is defined for degree >= 1 only")
    n = int(f.degree)
    for d in range(1, n // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _mod(f.bits, cand) == 0:
                return False
    return True


def period(f: BinPoly) -> int:
    """Least h >= 1 with f | x^h - 1."""
    f = _as_poly(f)
    if not f or f.bits & 1 == 0:
        raise ValueError("period requires f(0) != 0")
    if f.bits == 1:
        return 1
    n = int(f.degree)
    x = _mod(2, f.bits)
    cur = x
    # The period of a degree-n polynomial with f(0) != 0 is at most 2^n - 1
    # for square-free f; repeated factors can multiply it by a power of 2.
    limit = (1 << n) * (n + 1)
    for h in range(1, limit + 1):
        if cur == 1:
            return h
        cur = _mod(cur << 1, f.bits)
    raise ClusterCodeError(f"period of {f!r} not found below {limit}")  # pragma: no cover


def factor(f: BinPoly) -> list[BinPoly]:
    """Irreducible factors with multiplicity, by trial division (desk-scale degrees)."""
    f = _as_poly(f)
    if f.degree < 1:
        return []
    out = []
    a = f.bits
    d = 1
    while _deg(a) >= 2 * d:
        found = False
        for cand in range(1 << d, 1 << (d + 1)):
            if _mod(a, cand) == 0 and is_irreducible(BinPoly(cand)):
                a = _divmod(a, cand)[0]
                out.append(BinPoly(cand))
                found = True
                break
        if not found:
            d += 1
    if _deg(a) >= 1:
        out.append(BinPoly(a))
    return sorted(out)


def splitting_field_degree(f: BinPoly) -> int:
    """lcm of the degrees of the irreducible factors of a square-free f."""
    f = _as_poly(f)
    if not f or f.bits & 1 == 0 or not is_square_free(f):
        raise ValueError("splitting_field_degree needs square-free f with f(0) != 0")
    degrees = [int(p.degree) for p in factor(f)]
    return reduce(math.lcm, degrees, 1)


def is_b_polynomial(e: BinPoly, b: int) -> bool:
    """Binary b-polynomial test: degree b-1, e(0) != 0, square-free.

    The gcd conditions against q - 1 are vacuous for q = 2.
    """
    e = _as_poly(e)
    if not e or e.degree != b - 1 or e.bits & 1 == 0:
        return False
    return is_square_free(e)


def is_primitive(p: BinPoly) -> bool:
    p = _as_poly(p)
    if p.degree < 1 or p.bits & 1 == 0:
        return False
    return is_irreducible(p) and period(p) == (1 << int(p.degree)) - 1


def primitive_polys(m: int) -> Iterator[BinPoly]:
    """Primitive polynomials of degree m in increasing coefficient order."""
    if m == 1:
        yield BinPoly(0b11)
        return
    order = (1 << m) - 1
    prime_divisors = _prime_factors(order)
    for bits in range((1 << m) | 1, 1 << (m + 1), 2):
        # x has order 2^m - 1 mod p  <=>  p irreducible and primitive.
        if _powmod(2, order, bits) != 1:
            continue
        if any(_powmod(2, order // q, bits) == 1 for q in prime_divisors):
            continue
        if is_irreducible(BinPoly(bits)):
            yield BinPoly(bits)


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


class ExtField:
    """GF(2^s) with log/antilog tables built at construction."""

    def __init__(self, s: int, modulus: BinPoly | None = None):
        if s < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            if s not in _DEFAULT_MODULI:
                raise ValueError(f"no built-in modulus for s={s}; supply one")
            modulus = BinPoly.from_exponents(_DEFAULT_MODULI[s])
        modulus = _as_poly(modulus)
        if modulus.degree != s or not is_irreducible(modulus):
            raise ValueError(f"{modulus!r} is not an irreducible polynomial of degree {s}")
        self.s = s
        self.modulus = modulus
        self.order = 1 << s
        gen = self._find_generator()
        self._exp = [0] * (2 * (self.order - 1))
        self._log = [0] * self.order
        cur = 1
        for i in range(self.order - 1):
            self._exp[i] = cur
            self._log[cur] = i
            cur = _mulmod(cur, gen, modulus.bits)
        for i in range(self.order - 1, 2 * (self.order - 1)):
            self._exp[i] = self._exp[i - (self.order - 1)]
        self.generator = gen

    def _find_generator(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        primes = _prime_factors(n)
        for g in range(2, self.order):
            if all(_powmod(g, n // q, self.modulus.bits) != 1 for q in primes):
                return g
        raise ClusterCodeError("no generator found")  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, ExtField) and (self.s, self.modulus) == (other.s, other.modulus)

    def __hash__(self):
        return hash((self.s, self.modulus.bits))

    def __repr__(self):
        return f"ExtField({self.serialize()!r})"

    def serialize(self) -> str:
        return f"GF(2^{self.s})/{self.modulus.to_string()}"

    @classmethod
    def parse(cls, text: str) -> ExtField:
        head, _, mod = text.strip().partition("/")
        if not head.startswith("GF(2^") or not head.endswith(")"):
            raise ValueError(f"bad field string {text!r}")
        return cls(int(head[5:-1]), BinPoly.from_string(mod))

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(self, value)

    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, v) for v in range(self.order)]

    # raw int operations
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.serialize())
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]


@dataclass(frozen=True)
class FieldElem:
    field: ExtField
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"value {self.value} outside {self.field.serialize()}")

    def _check(self, other: FieldElem):
        if other.field != self.field:
            raise ValueError("operands belong to different fields")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return self * other.inverse()

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.field, self.field.pow(self.value, e))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.field.s))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElem({''.join(map(str, self.bits))})"


class ExtPoly:
    """Polynomial with coefficients in an :class:`ExtField`, lowest degree first."""

    def __init__(self, field: ExtField, coefficients: Iterable[FieldElem | int]):
        coeffs = [c.value if isinstance(c, FieldElem) else int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self._c = tuple(coeffs)

    @property
    def coefficients(self) -> tuple[FieldElem, ...]:
        return tuple(FieldElem(self.field, c) for c in self._c)

    @property
    def degree(self) -> int | float:
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    def __eq__(self, other):
        return isinstance(other, ExtPoly) and self.field == other.field and self._c == other._c

    def __hash__(self):
        return hash((self.field, self._c))

    def __add__(self, other: ExtPoly) -> ExtPoly:
        n = max(len(self._c), len(other._c))
        a = self._c + (0,) * (n - len(self._c))
        b = other._c + (0,) * (n - len(other._c))
        return ExtPoly(self.field, [x ^ y for x, y in zip(a, b)])

    def __mul__(self, other: ExtPoly) -> ExtPoly:
        if not self._c or not other._c:
            return ExtPoly(self.field, [])
        out = [0] * (len(self._c) + len(other._c) - 1)
        mul = self.field.mul
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] ^= mul(a, b)
        return ExtPoly(self.field, out)

    def __call__(self, x: FieldElem) -> FieldElem:
        acc = 0
        for c in reversed(self._c):
            acc = self.field.mul(acc, x.value) ^ c
        return FieldElem(self.field, acc)

    def __repr__(self):
        return f"ExtPoly({self.field.serialize()}, {list(self._c)})"
