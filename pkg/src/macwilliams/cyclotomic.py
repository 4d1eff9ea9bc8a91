"""Exact arithmetic in Z[xi] for xi a primitive p^s-th root of unity.

Values are kept in canonical form: the relation
``sum_{j<p} xi^(j p^(s-1)) = 0`` is used to eliminate every exponent in the
top residue block ``[(p-1) p^(s-1), p^s)``, leaving coordinates on the basis
``1, xi, ..., xi^(phi(p^s)-1)``.  Two values are equal iff their canonical
coefficient vectors are equal.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from mpmath import iv

from .ring import RingSpec, is_prime


class NotRational(ArithmeticError):
    """A cyclotomic value that should be rational has a surviving xi term."""


def _prime_power(m: int) -> tuple[int, int]:
    for p in range(2, m + 1):
        if m % p == 0:
            break
    else:
        raise ValueError(f"order must be >= 2, got {m}")
    if not is_prime(p):
        raise ValueError(f"order {m} is not a prime power")
    s, rest = 0, m
    while rest % p == 0:
        rest //= p
        s += 1
    if rest != 1:
        raise ValueError(f"order {m} is not a prime power")
    return p, s


def canonicalize(raw: Sequence[int], m: int) -> tuple[int, ...]:
    p, s = _prime_power(m)
    block = m // p
    c = list(raw)
    if len(c) != m:
        raise ValueError(f"expected {m} coefficients, got {len(c)}")
    top = (p - 1) * block
    for e in range(top, m):
        v = c[e]
        if v:
            c[e] = 0
            base = e - top
            for j in range(p - 1):
                c[base + j * block] -= v
    return tuple(c)


class CycInt:
    """An element of Z[xi], xi a primitive m-th root of unity, m = p^s."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[int]):
        self.m = m
        self.coeffs = canonicalize(coeffs, m)

    @classmethod
    def from_powers(cls, m: int, powers: Iterable[int]) -> CycInt:
        c = [0] * m
        for e in powers:
            c[e % m] += 1
        return cls(m, c)

    @classmethod
    def from_histogram(cls, m: int, counts: Sequence[int]) -> CycInt:
        """sum_e counts[e] xi^e."""
        return cls(m, [int(v) for v in counts])

    @classmethod
    def integer(cls, m: int, value: int) -> CycInt:
        c = [0] * m
        c[0] = value
        return cls(m, c)

    def _check(self, other: CycInt) -> None:
        if not isinstance(other, CycInt):
            raise TypeError(f"expected CycInt, got {type(other).__name__}")
        if other.m != self.m:
            raise ValueError(f"mixed orders {self.m} and {other.m}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.m, other)
        self._check(other)
        return CycInt(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        m = self.m
        if isinstance(other, int):
            return CycInt(m, [a * other for a in self.coeffs])
        self._check(other)
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % m] += a * b
        return CycInt(m, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycInt:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.integer(self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.integer(self.m, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self) -> str:
        terms = [f"{c}*xi^{e}" if e else str(c) for e, c in enumerate(self.coeffs) if c]
        return f"CycInt(m={self.m}: {' + '.join(terms) or '0'})"


def cyc(m: int, powers: Iterable[int]) -> CycInt:
    return CycInt.from_powers(m, powers)


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def to_rational(c: CycInt) -> Fraction:
    if not c.is_rational():
        raise NotRational(f"{c!r} is not rational")
    return Fraction(c.coeffs[0])


def character(a: Sequence[int], x: Sequence[int], ring: RingSpec) -> CycInt:
    """chi_a(x) = xi^trace(<a, x>) on element-index tuples."""
    if len(a) != len(x):
        raise ValueError(f"length mismatch: {len(a)} vs {len(x)}")
    tp = ring.trace_product_table
    e = sum(int(tp[ring.index(ai), ring.index(xi)]) for ai, xi in zip(a, x)) % ring.m
    return CycInt.from_powers(ring.m, [e])


def _conjugate_coeffs(coeffs: Sequence, m: int, u: int) -> list:
    if gcd(u, m) != 1:
        raise ValueError(f"{u} is not a unit mod {m}")
    out = [0] * m
    for e, c in enumerate(coeffs):
        if c:
            out[(u * e) % m] += c
    return out


def conjugate(c: CycInt, u: int) -> CycInt:
    """Galois image under xi -> xi^u."""
    return CycInt(c.m, _conjugate_coeffs(c.coeffs, c.m, u))


class CycNum:
    """An element of Q(xi), stored as integer numerators over one positive denominator.

    Supports field arithmetic and, for real elements, a certified sign: the
    value sum_e c_e cos(2 pi e / m) is evaluated in interval arithmetic with
    increasing precision until the interval excludes zero.  Exact zero is
    decided from the canonical coordinates, so the refinement terminates.
    """

    __slots__ = ("m", "num", "den")

    def __init__(self, m: int, num: Sequence[int], den: int = 1, *, canonical: bool = False):
        if den <= 0:
            raise ValueError("denominator must be positive")
        num = tuple(num) if canonical else canonicalize(num, m)
        g = den
        for v in num:
            if v:
                g = gcd(g, v)
                if g == 1:
                    break
        if g > 1:
            num = tuple(v // g for v in num)
            den //= g
        self.m = m
        self.num = num
        self.den = den

    @classmethod
    def of(cls, value, m: int) -> CycNum:
        if isinstance(value, CycNum):
            return value
        if isinstance(value, CycInt):
            return cls(value.m, value.coeffs, 1, canonical=True)
        value = Fraction(value)
        c = [0] * m
        c[0] = value.numerator
        return cls(m, c, value.denominator, canonical=True)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    def _lift(self, other) -> CycNum:
        other = CycNum.of(other, self.m)
        if other.m != self.m:
            raise ValueError(f"mixed orders {self.m} and {other.m}")
        return other

    def __add__(self, other):
        o = self._lift(other)
        if o.den == self.den:
            return CycNum(self.m, [a + b for a, b in zip(self.num, o.num)], self.den, canonical=True)
        return CycNum(self.m, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den, canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, [-a for a in self.num], self.den, canonical=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.m, [a * other for a in self.num], self.den, canonical=True)
        o = self._lift(other)
        m = self.m
        out = [0] * m
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        out[(i + j) % m] += a * b
        return CycNum(m, out, self.den * o.den)

    __rmul__ = __mul__

    def conjugate(self, u: int) -> CycNum:
        return CycNum(self.m, _conjugate_coeffs(self.num, self.m, u), self.den)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates; rational."""
        total = self
        for u in range(2, self.m):
            if gcd(u, self.m) == 1:
                total = total * self.conjugate(u)
        if not total.is_rational():
            raise ArithmeticError(f"norm of {self!r} is not rational")
        return Fraction(total.num[0], total.den)

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(xi)")
        if self.is_rational():
            return CycNum.of(Fraction(self.den, self.num[0]), self.m)
        cofactor = CycNum.of(1, self.m)
        for u in range(2, self.m):
            if gcd(u, self.m) == 1:
                cofactor = cofactor * self.conjugate(u)
        full = cofactor * self
        if not full.is_rational():
            raise ArithmeticError(f"norm of {self!r} is not rational")
        return cofactor * Fraction(full.den, full.num[0])

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_real(self) -> bool:
        return self == self.conjugate(-1)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return (self.num[0] > 0) - (self.num[0] < 0)
        if not self.is_real():
            raise ArithmeticError(f"{self!r} is not real; no ordering")
        # the denominator is positive, so the numerators carry the sign
        return _certified_sign(self.num, self.m)

    def __float__(self) -> float:
        return sum(v * math.cos(2 * math.pi * e / self.m) for e, v in enumerate(self.num) if v) / self.den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycInt, CycNum)):
            other = CycNum.of(other, self.m)
            return self.m == other.m and self.den == other.den and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.m, self.num, self.den))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycNum({Fraction(self.num[0], self.den)})"
        terms = [f"{c}*xi^{e}" if e else str(c) for e, c in enumerate(self.coeffs) if c]
        return f"CycNum(m={self.m}: {' + '.join(terms)} ~ {float(self):.6g})"


def _certified_sign(num: Sequence[int], m: int) -> int:
    # fast path: double precision with a generous error allowance
    approx = sum(v * math.cos(2 * math.pi * e / m) for e, v in enumerate(num) if v)
    slack = 1e-9 * sum(abs(v) for v in num)
    if abs(approx) > slack and math.isfinite(approx):
        return 1 if approx > 0 else -1
    prec = 64
    saved = iv.prec
    try:
        while True:
            iv.prec = prec
            two_pi = 2 * iv.pi
            total = iv.mpf(0)
            for e, v in enumerate(num):
                if v:
                    total += v * iv.cos(two_pi * e / m)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("sign refinement did not converge")
    finally:
        iv.prec = saved
