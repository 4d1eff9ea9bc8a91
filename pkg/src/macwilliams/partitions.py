"""Alphabet partitions, tuple decompositions and composition tables.

An :class:`AlphabetPartition` splits the ring into blocks; decomposing a
tuple counts how many of its entries fall into each block.  Block 0 is always
``{0}`` and the remaining blocks are ordered by the smallest element index
they contain, which makes every listing deterministic.

Supported kinds:

``lee``        negation orbits {a, -a}
``hom``        Z | U | S | R (zero, units, nonzero socle, the rest); empty
               classes are dropped but remembered in ``labels``
``subfield``   orbits a * F_p^x of the base-field units (fields only)
``hamming``    {0} | nonzero
``weight:<w>`` elements grouped by their value under weight ``w``; this is
               the plain weight partition, generally *not* Fourier-invariant
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .ring import RingElement, RingSpec, is_unit, valuation
from .weights import WeightKind, element_weight, parse_weight

PARTITION_KINDS = ("lee", "hom", "subfield", "hamming")


class PartitionError(ValueError):
    """Partition kind incompatible with the ring, or weight not constant on blocks."""


@dataclass(frozen=True)
class AlphabetPartition:
    ring: RingSpec
    kind: str
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_of(self) -> tuple[int, ...]:
        return _block_lookup(self)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def describe(self) -> list[dict]:
        return [
            {"block": i, "label": lab, "elements": [repr(self.ring.from_index(e)) for e in blk]}
            for i, (lab, blk) in enumerate(zip(self.labels, self.blocks))
        ]


@lru_cache(maxsize=None)
def _block_lookup(partition: AlphabetPartition) -> tuple[int, ...]:
    lookup = [0] * partition.ring.size
    for b, blk in enumerate(partition.blocks):
        for e in blk:
            lookup[e] = b
    return tuple(lookup)


def _ordered(groups: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    blocks = [tuple(sorted(g)) for g in groups]
    blocks = [b for b in blocks if b]
    zero = [b for b in blocks if b == (0,)]
    rest = sorted((b for b in blocks if b != (0,)), key=lambda b: b[0])
    return tuple(zero + rest)


def _orbit_blocks(ring: RingSpec, action) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    groups = []
    for i in range(ring.size):
        if i in seen:
            continue
        orbit = action(i)
        seen.update(orbit)
        groups.append(orbit)
    return _ordered(groups)


def lee_blocks(ring: RingSpec) -> AlphabetPartition:
    neg = ring.neg_table
    blocks = _orbit_blocks(ring, lambda i: {i, int(neg[i])})
    labels = tuple(f"+-{ring.from_index(b[0])!r}" for b in blocks)
    return AlphabetPartition(ring, "lee", blocks, labels)


def hom_blocks(ring: RingSpec) -> AlphabetPartition:
    if ring.s < 2:
        raise PartitionError(f"Z/U/S/R classes need s >= 2; {ring.name} is a field (use hamming)")
    classes: dict[str, list[int]] = {"Z": [], "U": [], "S": [], "R": []}
    for e in ring.elements():
        i = ring.index(e)
        if e.is_zero():
            classes["Z"].append(i)
        elif is_unit(e):
            classes["U"].append(i)
        elif valuation(e) == ring.s - 1:
            classes["S"].append(i)
        else:
            classes["R"].append(i)
    labels = tuple(k for k in "ZUSR" if classes[k])
    blocks = tuple(tuple(sorted(classes[k])) for k in labels)
    return AlphabetPartition(ring, "hom", blocks, labels)


def subfield_blocks(ring: RingSpec) -> AlphabetPartition:
    if ring.s != 1:
        raise PartitionError(f"subfield orbits need a field, not {ring.name}")
    scalars = [ring.element(c) for c in range(1, ring.p)]

    def orbit(i: int) -> set[int]:
        a = ring.from_index(i)
        return {ring.index(c * a) for c in scalars}

    blocks = _orbit_blocks(ring, orbit)
    labels = tuple(f"{ring.from_index(b[0])!r}*F_{ring.p}^x" for b in blocks)
    return AlphabetPartition(ring, "subfield", blocks, labels)


def hamming_blocks(ring: RingSpec) -> AlphabetPartition:
    blocks = ((0,), tuple(range(1, ring.size)))
    return AlphabetPartition(ring, "hamming", blocks, ("0", "nonzero"))


def weight_class_blocks(ring: RingSpec, kind: WeightKind) -> AlphabetPartition:
    """Group elements by weight value (ascending); the plain weight partition."""
    by_value: dict[Fraction, list[int]] = {}
    for e in ring.elements():
        by_value.setdefault(element_weight(kind, e), []).append(ring.index(e))
    values = sorted(by_value)
    blocks = tuple(tuple(by_value[v]) for v in values)
    labels = tuple(str(v) for v in values)
    return AlphabetPartition(ring, f"weight:{kind}", blocks, labels)


@lru_cache(maxsize=None)
def build_partition(kind: str, ring: RingSpec) -> AlphabetPartition:
    if kind == "lee":
        return lee_blocks(ring)
    if kind == "hom":
        return hom_blocks(ring)
    if kind == "subfield":
        return subfield_blocks(ring)
    if kind == "hamming":
        return hamming_blocks(ring)
    if kind.startswith("weight:"):
        return weight_class_blocks(ring, parse_weight(kind[len("weight:"):]))
    raise PartitionError(f"unknown partition kind {kind!r}")


def default_partition_kind(ring: RingSpec, kind: WeightKind) -> str:
    """Coarsest supported partition on which ``kind`` is constant per block."""
    if kind.tag == "lee":
        return "lee"
    if kind.tag == "homogeneous":
        return "hom" if ring.s >= 2 else "hamming"
    if kind.tag == "subfield":
        return "subfield"
    return "hamming"


def applicable_partitions(ring: RingSpec) -> list[str]:
    """The Fourier-invariant partition kinds that make sense for ``ring``."""
    kinds = ["lee"]
    if ring.s >= 2:
        kinds.append("hom")
    if ring.s == 1:
        kinds.append("subfield")
    kinds.append("hamming")
    return kinds


# -- decompositions -------------------------------------------------------------


def _to_index(ring: RingSpec, v) -> int:
    return ring.index(v) if isinstance(v, RingElement) else ring.index(int(v))


def decompose(partition: AlphabetPartition, x: Sequence[int | RingElement]) -> tuple[int, ...]:
    lookup = partition.block_of
    counts = [0] * partition.block_count
    for v in x:
        counts[lookup[_to_index(partition.ring, v)]] += 1
    return tuple(counts)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All non-negative ``parts``-tuples summing to ``total``, first entry descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def all_decompositions(block_count: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Every decomposition of length-n tuples over ``block_count`` blocks.

    Ordered reverse-lexicographically, so the zero decomposition (n, 0, ..., 0)
    always comes first.
    """
    if block_count < 1 or n < 0:
        raise ValueError(f"need block_count >= 1 and n >= 0, got {block_count}, {n}")
    return tuple(_compositions(n, block_count))


def decomposition_count(block_count: int, n: int) -> int:
    return comb(n + block_count - 1, block_count - 1)


def composition_tables(pi: Sequence[int], rho: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """Non-negative integer matrices with row sums ``pi`` and column sums ``rho``.

    Depth-first over rows; each row is drawn from the column sums still open.
    """
    if sum(pi) != sum(rho):
        return []
    B = len(pi)
    if len(rho) != B:
        raise ValueError(f"length mismatch: {len(pi)} vs {len(rho)}")
    out: list[tuple[tuple[int, ...], ...]] = []

    def rows_for(total: int, caps: list[int], j: int) -> Iterator[tuple[int, ...]]:
        if j == len(caps) - 1:
            if total <= caps[j]:
                yield (total,)
            return
        remaining_cap = sum(caps[j + 1:])
        lo = max(0, total - remaining_cap)
        for v in range(min(total, caps[j]), lo - 1, -1):
            for rest in rows_for(total - v, caps, j + 1):
                yield (v,) + rest

    def rec(i: int, remaining: list[int], acc: list[tuple[int, ...]]) -> None:
        if i == B - 1:
            if sum(remaining) == pi[i]:
                out.append(tuple(acc) + (tuple(remaining),))
            return
        for row in rows_for(pi[i], remaining, 0):
            rec(i + 1, [c - v for c, v in zip(remaining, row)], acc + [row])

    rec(0, list(rho), [])
    return out


def block_weights(partition: AlphabetPartition, kind: WeightKind) -> tuple[Fraction, ...]:
    ring = partition.ring
    out = []
    for blk in partition.blocks:
        values = {element_weight(kind, ring.from_index(e)) for e in blk}
        if len(values) != 1:
            raise PartitionError(f"weight {kind} is not constant on {partition.kind} block {blk}")
        out.append(values.pop())
    return tuple(out)


def decomposition_weight(pi: Sequence[int], partition: AlphabetPartition, kind: WeightKind) -> Fraction:
    w = block_weights(partition, kind)
    return sum((c * wi for c, wi in zip(pi, w)), Fraction(0))


def class_map(fine: AlphabetPartition, coarse: AlphabetPartition) -> tuple[int, ...]:
    """For each fine block, the coarse block containing it; errors if not a refinement."""
    lookup = coarse.block_of
    out = []
    for blk in fine.blocks:
        targets = {lookup[e] for e in blk}
        if len(targets) != 1:
            raise PartitionError(f"{fine.kind} block {blk} straddles {coarse.kind} blocks")
        out.append(targets.pop())
    return tuple(out)


def push_forward(pi: Sequence[int], mapping: Sequence[int], coarse_count: int) -> tuple[int, ...]:
    out = [0] * coarse_count
    for c, target in zip(pi, mapping):
        out[target] += c
    return tuple(out)
