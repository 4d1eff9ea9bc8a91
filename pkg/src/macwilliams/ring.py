"""Exact arithmetic in Galois rings GR(p^s, r).

A Galois ring is realised as (Z/p^s Z)[x] / (h) for a monic polynomial ``h``
of degree ``r`` whose reduction mod p is irreducible.  ``r = 1`` gives the
integer residue ring Z/p^s Z and ``s = 1`` gives the finite field F_{p^r};
every other module works against this single abstraction.

Elements are stored as coefficient tuples (constant term first).  Each element
also has a canonical integer index ``sum(c_i * (p^s)^i)`` in ``[0, p^(sr))``,
so for ``r = 1`` the index of an element is simply its residue.  Bulk code
manipulation works on indices and uses the lookup tables exposed by
:class:`RingSpec` (``add_table``, ``mul_table``, ...).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .guards import GuardExceeded, table_guard

# Moduli for the rings used in the worked examples; anything else is supplied
# by the caller.  Keys are (p, r, s), values are coefficient lists, constant
# term first.
BUILTIN_MODULI: dict[tuple[int, int, int], tuple[int, ...]] = {
    (2, 2, 1): (1, 1, 1),  # F_4: x^2 + x + 1
    (2, 3, 1): (1, 1, 0, 1),  # F_8: x^3 + x + 1
    (3, 3, 1): (1, 2, 0, 1),  # F_27: x^3 + 2x + 1
    (2, 2, 2): (1, 1, 1),  # GR(4, 2): x^2 + x + 1
}

MAX_IRREDUCIBILITY_DEGREE = 8


class RingError(ValueError):
    """Invalid ring parameters or operands from different rings."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by monic-after-normalisation b over F_p."""
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        a = _poly_trim(a)
    return a


def is_irreducible_mod_p(h: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(h)/2 over F_p."""
    h = _poly_trim([x % p for x in h])
    deg = len(h) - 1
    if deg < 1:
        return False
    if deg > MAX_IRREDUCIBILITY_DEGREE:
        raise RingError(f"irreducibility check supports degree <= {MAX_IRREDUCIBILITY_DEGREE}, got {deg}")
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod_p(h, list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """The Galois ring GR(p^s, r) presented as (Z/p^s)[x]/(h)."""

    p: int
    r: int
    s: int
    h: tuple[int, ...] = field(default=(0, 1))

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"p must be prime, got {self.p}")
        if self.r < 1 or self.s < 1:
            raise RingError(f"need r >= 1 and s >= 1, got r={self.r}, s={self.s}")
        h = tuple(int(c) % self.m for c in self.h)
        if self.r == 1:
            h = (0, 1)
        if len(h) != self.r + 1 or h[-1] != 1:
            raise RingError(f"modulus must be monic of degree {self.r}, got {list(self.h)}")
        if self.r > 1 and not is_irreducible_mod_p(h, self.p):
            raise RingError(f"modulus {list(h)} is reducible mod {self.p}")
        object.__setattr__(self, "h", h)

    # -- derived parameters -------------------------------------------------

    @property
    def q(self) -> int:
        """Residue field size p^r."""
        return self.p**self.r

    @property
    def m(self) -> int:
        """Characteristic p^s, also the order of the character root of unity."""
        return self.p**self.s

    @property
    def size(self) -> int:
        return self.m**self.r

    @property
    def unit_count(self) -> int:
        return self.p ** (self.r * (self.s - 1)) * (self.q - 1)

    def __repr__(self) -> str:
        return f"RingSpec(p={self.p}, r={self.r}, s={self.s}, h={list(self.h)})"

    @property
    def name(self) -> str:
        if self.r == 1:
            return f"Z/{self.m}"
        if self.s == 1:
            return f"F_{self.q}"
        return f"GR({self.m},{self.r})"

    # -- element construction -----------------------------------------------

    def __call__(self, value: int | Sequence[int] | RingElement) -> RingElement:
        return self.element(value)

    def element(self, value: int | Sequence[int] | RingElement) -> RingElement:
        """Build an element from an integer (embedded constant) or a coefficient list."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingError("element belongs to a different ring")
            return value
        if isinstance(value, (int, np.integer)):
            coeffs = (int(value) % self.m,) + (0,) * (self.r - 1)
        else:
            coeffs = tuple(int(c) % self.m for c in value)
            if len(coeffs) > self.r:
                raise RingError(f"expected at most {self.r} coefficients, got {len(coeffs)}")
            coeffs += (0,) * (self.r - len(coeffs))
        return RingElement(self, coeffs)

    def from_index(self, index: int) -> RingElement:
        if not 0 <= index < self.size:
            raise RingError(f"index {index} out of range for {self.name}")
        coeffs = []
        for _ in range(self.r):
            index, c = divmod(index, self.m)
            coeffs.append(c)
        return RingElement(self, tuple(coeffs))

    def index(self, a: int | Sequence[int] | RingElement) -> int:
        """Canonical integer index of an element.

        Integers are taken to already be indices (range-checked); for ``r = 1``
        that is the residue itself.  Coefficient lists and elements are encoded.
        """
        if isinstance(a, (int, np.integer)):
            if not 0 <= a < self.size:
                raise RingError(f"index {a} out of range for {self.name}")
            return int(a)
        e = self.element(a)
        return sum(c * self.m**i for i, c in enumerate(e.coeffs))

    def elements(self) -> list[RingElement]:
        return [self.from_index(i) for i in range(self.size)]

    @property
    def zero(self) -> RingElement:
        return self.element(0)

    @property
    def one(self) -> RingElement:
        return self.element(1)

    def generator(self) -> RingElement:
        """The class of x (the alpha of F_q = F_p[alpha]); equals 0 when r = 1."""
        if self.r == 1:
            return self.zero
        return self.element((0, 1))

    # -- raw coefficient arithmetic ------------------------------------------

    def _add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        m = self.m
        return tuple((x + y) % m for x, y in zip(a, b))

    def _neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        m = self.m
        return tuple(-x % m for x in a)

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        m, r, h = self.m, self.r, self.h
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        # x^r = -(h_0 + h_1 x + ... + h_{r-1} x^{r-1})
        for k in range(len(prod) - 1, r - 1, -1):
            c = prod[k] % m
            if c:
                for i in range(r):
                    prod[k - r + i] -= c * h[i]
        return tuple(c % m for c in prod[:r])

    # -- lookup tables for index-based bulk work -----------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        table_guard(self.size)
        els = [e.coeffs for e in self.elements()]
        idx = {c: i for i, c in enumerate(els)}
        t = np.empty((self.size, self.size), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                t[i, j] = idx[self._add(a, b)]
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        table_guard(self.size)
        els = [e.coeffs for e in self.elements()]
        idx = {c: i for i, c in enumerate(els)}
        t = np.empty((self.size, self.size), dtype=np.int64)
        for i, a in enumerate(els):
            for j in range(i, self.size):
                t[i, j] = t[j, i] = idx[self._mul(a, els[j])]
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.index(-e) for e in self.elements()], dtype=np.int64)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """trace(a) for every element index a."""
        return np.array([trace(e) for e in self.elements()], dtype=np.int64)

    @cached_property
    def trace_product_table(self) -> np.ndarray:
        """trace(a * b) for every pair of element indices."""
        return self.trace_table[self.mul_table]

    @cached_property
    def valuation_table(self) -> np.ndarray:
        return np.array([valuation(e) for e in self.elements()], dtype=np.int64)


@dataclass(frozen=True)
class RingElement:
    """An element of a :class:`RingSpec`, stored as canonical coefficients."""

    ring: RingSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ring.r or any(not 0 <= c < self.ring.m for c in self.coeffs):
            raise RingError(f"non-canonical coefficients {self.coeffs} for {self.ring.name}")

    def _other(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingError(f"mixed-ring operands: {self.ring.name} and {other.ring.name}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.element(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, self.ring._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, self.ring._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RingElement:
        if k < 0:
            return inverse(self) ** (-k)
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __int__(self) -> int:
        return self.ring.index(self)

    @property
    def index(self) -> int:
        return self.ring.index(self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        if self.ring.r == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            coef = "" if (c == 1 and i > 0) else str(c)
            terms.append(coef + mono)
        return " + ".join(reversed(terms)) or "0"


def build_ring(p: int, r: int = 1, s: int = 1, h: Sequence[int] | None = None) -> RingSpec:
    """Validated GR(p^s, r); ``h`` defaults to the built-in modulus table."""
    if h is None:
        if r == 1:
            h = (0, 1)
        elif (p, r, s) in BUILTIN_MODULI:
            h = BUILTIN_MODULI[(p, r, s)]
        else:
            raise RingError(f"no built-in modulus for p={p}, r={r}, s={s}; pass h explicitly")
    return RingSpec(p, r, s, tuple(h))


def ring_from_json(obj: dict) -> RingSpec:
    unknown = set(obj) - {"p", "r", "s", "h"}
    if unknown:
        raise RingError(f"unknown ring fields: {sorted(unknown)}")
    if "p" not in obj:
        raise RingError("ring description needs 'p'")
    return build_ring(int(obj["p"]), int(obj.get("r", 1)), int(obj.get("s", 1)), obj.get("h"))


def ring_to_json(ring: RingSpec) -> dict:
    out = {"p": ring.p, "r": ring.r, "s": ring.s}
    if ring.r > 1:
        out["h"] = list(ring.h)
    return out


def arith(op: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "sub":
        return a - b
    raise ValueError(f"unknown operation {op!r}")


# -- units, ideals, valuation -------------------------------------------------


def is_unit(a: RingElement) -> bool:
    return any(c % a.ring.p for c in a.coeffs)


def valuation(a: RingElement) -> int:
    """Largest i with a in <p^i>; the zero element has valuation s."""
    ring = a.ring
    if a.is_zero():
        return ring.s
    v = 0
    while all(c % ring.p ** (v + 1) == 0 for c in a.coeffs):
        v += 1
    return v


def inverse(a: RingElement) -> RingElement:
    if not is_unit(a):
        raise RingError(f"{a!r} is not a unit")
    # the unit group has order p^(r(s-1)) (q - 1)
    return a ** (a.ring.unit_count - 1)


def divide_by_p_power(a: RingElement, k: int) -> RingElement:
    """Some b with p^k b = a; requires valuation(a) >= k."""
    ring = a.ring
    pk = ring.p**k
    if any(c % pk for c in a.coeffs):
        raise RingError(f"{a!r} is not divisible by p^{k}")
    return RingElement(ring, tuple(c // pk for c in a.coeffs))


def ideal(ring: RingSpec, i: int) -> list[RingElement]:
    """Elements of <p^i>."""
    pi = ring.p**i
    return [ring.element(c) for c in itertools.product(range(0, ring.m, pi), repeat=ring.r)]


def units(ring: RingSpec) -> list[RingElement]:
    return [e for e in ring.elements() if is_unit(e)]


# -- Teichmuller digits, Frobenius, trace -------------------------------------


def teichmuller_lift(a: RingElement) -> RingElement:
    """Stable value of a -> a^q iterated; the Teichmuller representative of a mod p."""
    q = a.ring.q
    cur = a
    while True:
        nxt = cur**q
        if nxt == cur:
            return cur
        cur = nxt


def teichmuller_set(ring: RingSpec) -> set[RingElement]:
    reps = itertools.product(range(ring.p), repeat=ring.r)
    return {teichmuller_lift(ring.element(c)) for c in reps}


def teichmuller_digits(a: RingElement) -> list[RingElement]:
    """Digits (a_0, ..., a_{s-1}) in the Teichmuller set with a = sum p^i a_i."""
    ring = a.ring
    digits = []
    rest = a
    for i in range(ring.s):
        d = teichmuller_lift(rest)
        digits.append(d)
        if i < ring.s - 1:
            rest = divide_by_p_power(rest - d, 1)
    return digits


def frobenius(a: RingElement) -> RingElement:
    ring = a.ring
    out = ring.zero
    for i, d in enumerate(teichmuller_digits(a)):
        out = out + ring.element(ring.p**i) * d**ring.p
    return out


def trace(a: RingElement) -> int:
    """Generalised trace a + a^f + ... + a^(f^(r-1)), as a residue mod p^s."""
    total = a
    cur = a
    for _ in range(a.ring.r - 1):
        cur = frobenius(cur)
        total = total + cur
    if any(total.coeffs[1:]):
        raise RingError(f"trace of {a!r} left Z/p^s: {total!r}")
    return total.coeffs[0]


def inner_product(ring: RingSpec, a: Iterable[int], x: Iterable[int]) -> int:
    """<a, x> on element indices, returned as an element index."""
    acc = 0
    add, mul = ring.add_table, ring.mul_table
    for ai, xi in zip(a, x, strict=True):
        acc = add[acc, mul[ai, xi]]
    return int(acc)


__all__ = [
    "BUILTIN_MODULI",
    "GuardExceeded",
    "RingElement",
    "RingError",
    "RingSpec",
    "arith",
    "build_ring",
    "divide_by_p_power",
    "frobenius",
    "ideal",
    "inner_product",
    "inverse",
    "is_irreducible_mod_p",
    "is_prime",
    "is_unit",
    "ring_from_json",
    "ring_to_json",
    "teichmuller_digits",
    "teichmuller_lift",
    "teichmuller_set",
    "trace",
    "units",
    "valuation",
]
