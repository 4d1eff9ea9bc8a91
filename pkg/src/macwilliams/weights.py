"""Hamming, Lee, homogeneous and subfield weights with exact rational values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ring import RingElement, RingSpec, valuation

KINDS = ("hamming", "lee", "homogeneous", "subfield")


class WeightError(ValueError):
    """Weight kind incompatible with the ring, or malformed weight spec."""


@dataclass(frozen=True)
class WeightKind:
    tag: str
    lam: Fraction = Fraction(2)

    def __post_init__(self):
        if self.tag not in KINDS:
            raise WeightError(f"unknown weight kind {self.tag!r}; expected one of {KINDS}")
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.tag == "subfield" and self.lam < 1:
            raise WeightError(f"subfield weight needs lambda >= 1, got {self.lam}")

    def check_ring(self, ring: RingSpec) -> None:
        if self.tag == "lee" and ring.r != 1:
            raise WeightError(f"Lee weight is defined on Z/p^s only, not {ring.name}")
        if self.tag == "subfield" and ring.s != 1:
            raise WeightError(f"subfield weight is defined on F_(p^r) only, not {ring.name}")

    def __str__(self) -> str:
        if self.tag == "subfield":
            return f"subfield:{self.lam.numerator}/{self.lam.denominator}"
        return self.tag


HAMMING = WeightKind("hamming")
LEE = WeightKind("lee")
HOMOGENEOUS = WeightKind("homogeneous")


def subfield(lam: Fraction | int | str = 2) -> WeightKind:
    return WeightKind("subfield", Fraction(lam))


def parse_weight(text: str) -> WeightKind:
    """Parse ``lee|hamming|homogeneous|subfield[:num/den]``."""
    tag, _, arg = text.strip().lower().partition(":")
    if tag != "subfield":
        if arg:
            raise WeightError(f"weight {tag!r} takes no parameter")
        return WeightKind(tag)
    if not arg:
        return subfield()
    try:
        return subfield(Fraction(arg))
    except (ValueError, ZeroDivisionError):
        raise WeightError(f"bad subfield parameter {arg!r}") from None


def _in_base_field(a: RingElement) -> bool:
    return not any(a.coeffs[1:])


def element_weight(kind: WeightKind, a: RingElement) -> Fraction:
    ring = a.ring
    kind.check_ring(ring)
    if a.is_zero():
        return Fraction(0)
    if kind.tag == "hamming":
        return Fraction(1)
    if kind.tag == "lee":
        v = a.coeffs[0]
        return Fraction(min(v, ring.m - v))
    if kind.tag == "homogeneous":
        # a field has no proper socle: the normalised weight is Hamming there
        if ring.s == 1:
            return Fraction(1)
        if valuation(a) == ring.s - 1:
            return Fraction(ring.q, ring.q - 1)
        return Fraction(1)
    return Fraction(1) if _in_base_field(a) else kind.lam


def weight_by_index(kind: WeightKind, ring: RingSpec) -> list[Fraction]:
    """Element weight for every element index."""
    return [element_weight(kind, e) for e in ring.elements()]


def tuple_weight(kind: WeightKind, x: Iterable[RingElement | int], ring: RingSpec | None = None) -> Fraction:
    """Additive extension; plain ints are element indices and need ``ring``."""
    total = Fraction(0)
    for xi in x:
        if not isinstance(xi, RingElement):
            if ring is None:
                raise WeightError("integer entries need an explicit ring")
            xi = ring.from_index(ring.index(xi))
        total += element_weight(kind, xi)
    return total


def max_weight(kind: WeightKind, ring: RingSpec) -> Fraction:
    return max(weight_by_index(kind, ring))
