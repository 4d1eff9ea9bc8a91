"""Linear codes over GR(p^s, r).

Codewords are stored as rows of element indices.  A code is materialised by
closing the generator span one row at a time, which never enumerates more
than |C| * |R| candidate words.  Two independent dual computations are
provided: exhaustive search over R^n, and a parity-check matrix read off a
diagonal (Smith-like) reduction of the generator matrix.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .guards import check_guard
from .partitions import AlphabetPartition, all_decompositions, decomposition_weight
from .ring import RingElement, RingSpec, divide_by_p_power, inverse, ring_from_json, ring_to_json, valuation
from .weights import WeightKind, weight_by_index


class CodeError(ValueError):
    """Malformed generator matrix or code description."""


def _encode(rows: np.ndarray, size: int) -> np.ndarray:
    weights = size ** np.arange(rows.shape[1], dtype=np.int64)
    return rows @ weights


def _decode(keys: np.ndarray, size: int, n: int) -> np.ndarray:
    out = np.empty((len(keys), n), dtype=np.int64)
    rest = keys.copy()
    for k in range(n):
        out[:, k] = rest % size
        rest //= size
    return out


class LinearCode:
    """An R-submodule of R^n given by generator rows of element indices."""

    def __init__(self, ring: RingSpec, n: int, generators: Iterable[Sequence[int | RingElement]] = ()):
        if n < 1:
            raise CodeError(f"length must be positive, got {n}")
        self.ring = ring
        self.n = n
        rows = []
        for row in generators:
            row = [v.index if isinstance(v, RingElement) else ring.index(int(v)) for v in row]
            if len(row) != n:
                raise CodeError(f"generator {row} has length {len(row)}, expected {n}")
            rows.append(tuple(row))
        self.generators: tuple[tuple[int, ...], ...] = tuple(rows)

    def __repr__(self) -> str:
        return f"LinearCode({self.ring.name}, n={self.n}, generators={list(self.generators)})"

    @cached_property
    def _keys(self) -> np.ndarray:
        ring, n = self.ring, self.n
        size = ring.size
        words = np.zeros((1, n), dtype=np.int64)
        mul, add = ring.mul_table, ring.add_table
        for g in self.generators:
            check_guard("span closure candidates", len(words) * size)
            multiples = mul[:, np.asarray(g)]  # (|R|, n): c * g for every scalar c
            cand = add[words[:, None, :], multiples[None, :, :]].reshape(-1, n)
            words = _decode(np.unique(_encode(cand, size)), size, n)
        return np.unique(_encode(words, size))

    @property
    def codewords(self) -> np.ndarray:
        """All codewords, one row of element indices each, in a fixed order."""
        return _decode(self._keys, self.ring.size, self.n)

    def codeword_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(map(tuple, self.codewords.tolist()))

    @property
    def size(self) -> int:
        return len(self._keys)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, word: Sequence[int]) -> bool:
        key = _encode(np.asarray([word], dtype=np.int64), self.ring.size)[0]
        i = np.searchsorted(self._keys, key)
        return bool(i < len(self._keys) and self._keys[i] == key)

    def same_code(self, other: LinearCode) -> bool:
        return self.ring == other.ring and self.n == other.n and np.array_equal(self._keys, other._keys)

    def to_json(self) -> dict:
        return {"ring": ring_to_json(self.ring), "n": self.n, "generators": [_row_json(self.ring, g) for g in self.generators]}


def _row_json(ring: RingSpec, row: Sequence[int]) -> list:
    if ring.r == 1:
        return [int(v) for v in row]
    return [list(ring.from_index(v).coeffs) for v in row]


def code_from_generator(ring: RingSpec, rows: Iterable[Sequence[int | Sequence[int] | RingElement]]) -> LinearCode:
    """Build a code; entries are integers (r = 1) or coefficient lists."""
    rows = [list(r) for r in rows]
    if not rows:
        raise CodeError("need at least one generator row (use zero_code for {0})")
    n = len(rows[0])
    parsed = [[v if isinstance(v, RingElement) else ring.element(v) for v in row] for row in rows]
    return LinearCode(ring, n, parsed)


def code_from_json(obj: dict) -> LinearCode:
    unknown = set(obj) - {"ring", "n", "generators"}
    if unknown:
        raise CodeError(f"unknown code fields: {sorted(unknown)}")
    try:
        ring = ring_from_json(obj["ring"])
        n = int(obj["n"])
        rows = obj["generators"]
    except KeyError as exc:
        raise CodeError(f"code description missing {exc.args[0]!r}") from None
    if not rows:
        return zero_code(ring, n)
    code = code_from_generator(ring, rows)
    if code.n != n:
        raise CodeError(f"generators have length {code.n} but n = {n}")
    return code


def zero_code(ring: RingSpec, n: int) -> LinearCode:
    return LinearCode(ring, n, [])


def full_code(ring: RingSpec, n: int) -> LinearCode:
    return LinearCode(ring, n, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)])


# -- duals ----------------------------------------------------------------------


def _all_words(ring: RingSpec, n: int) -> np.ndarray:
    check_guard(f"ambient space |{ring.name}|^{n}", ring.size**n)
    return np.indices((ring.size,) * n).reshape(n, -1).T.astype(np.int64)


def orthogonal_mask(ring: RingSpec, words: np.ndarray, rows: Iterable[Sequence[int]]) -> np.ndarray:
    """Boolean mask of the words orthogonal to every row."""
    mul, add = ring.mul_table, ring.add_table
    ok = np.ones(len(words), dtype=bool)
    for g in rows:
        acc = np.zeros(len(words), dtype=np.int64)
        for k, gk in enumerate(g):
            acc = add[acc, mul[words[:, k], gk]]
        ok &= acc == 0
    return ok


def dual_code(code: LinearCode) -> LinearCode:
    """Dual by exhaustive search over R^n; the result carries its codewords as generators."""
    ring, n = code.ring, code.n
    words = _all_words(ring, n)
    gens = code.generators or ()
    dual_words = words[orthogonal_mask(ring, words, gens)]
    out = LinearCode(ring, n, [])
    out.generators = _spanning_subset(ring, n, dual_words)
    out.__dict__["_keys"] = np.unique(_encode(dual_words, ring.size))
    return out


def _spanning_subset(ring: RingSpec, n: int, words: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """A small generating set for the module whose full word list is ``words``."""
    target = len(words)
    chosen: list[tuple[int, ...]] = []
    span = LinearCode(ring, n, [])
    for w in words.tolist():
        if span.size == target:
            break
        if tuple(w) not in span:
            chosen.append(tuple(w))
            span = LinearCode(ring, n, chosen)
    return tuple(chosen)


@dataclass(frozen=True)
class StandardForm:
    """Row-reduced generator in permuted coordinates plus the diagonal reduction data."""

    permutation: tuple[int, ...]  # permuted column j holds original column permutation[j]
    generator: tuple[tuple[int, ...], ...]
    subtype: tuple[int, ...]
    pivot_valuations: tuple[int, ...]
    column_transform: tuple[tuple[int, ...], ...]  # Q with (L G Q) diagonal, original coordinates

    @property
    def free_rank(self) -> int:
        return self.subtype[0]

    def size(self, ring: RingSpec) -> int:
        return prod_sizes(ring, self.subtype)


def prod_sizes(ring: RingSpec, subtype: Sequence[int]) -> int:
    out = 1
    for i, k in enumerate(subtype):
        out *= ring.q ** ((ring.s - i) * k)
    return out


def standard_form(code: LinearCode) -> StandardForm:
    """Elimination with minimal-valuation pivots and column swaps."""
    ring, n = code.ring, code.n
    zero = ring.zero
    G = [[ring.from_index(v) for v in row] for row in code.generators]
    Q = [[ring.one if i == j else zero for j in range(n)] for i in range(n)]
    perm = list(range(n))
    vals: list[int] = []
    k = len(G)
    for t in range(min(k, n)):
        best = None
        for i in range(t, k):
            for j in range(t, n):
                v = valuation(G[i][j])
                if v < ring.s and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        G[t], G[bi] = G[bi], G[t]
        for row in G:
            row[t], row[bj] = row[bj], row[t]
        for row in Q:
            row[t], row[bj] = row[bj], row[t]
        perm[t], perm[bj] = perm[bj], perm[t]
        # the coefficient-wise quotient by p^v is a unit because v is exact
        inv = inverse(divide_by_p_power(G[t][t], v))
        G[t] = [inv * x for x in G[t]]
        for i in range(t + 1, k):
            e = G[i][t]
            if not e.is_zero():
                f = divide_by_p_power(e, v)
                G[i] = [a - f * b for a, b in zip(G[i], G[t])]
        vals.append(v)
    rank = len(vals)
    reduced = [row[:] for row in G[:rank]]
    # column clearing to reach a diagonal matrix; only Q needs to be tracked
    D = [row[:] for row in reduced]
    for t, v in enumerate(vals):
        for j in range(t + 1, n):
            e = D[t][j]
            if e.is_zero():
                continue
            f = divide_by_p_power(e, v)
            for row in D:
                row[j] = row[j] - f * row[t]
            for row in Q:
                row[j] = row[j] - f * row[t]
    subtype = tuple(vals.count(i) for i in range(ring.s))
    return StandardForm(
        permutation=tuple(perm),
        generator=tuple(tuple(x.index for x in row) for row in reduced),
        subtype=subtype,
        pivot_valuations=tuple(vals),
        column_transform=tuple(tuple(x.index for x in row) for row in Q),
    )


def parity_check_rows(sf: StandardForm, ring: RingSpec) -> tuple[tuple[int, ...], ...]:
    """Generators of the dual from the diagonal reduction L G Q = diag(p^v_t)."""
    n = len(sf.column_transform)
    Q = [[ring.from_index(x) for x in row] for row in sf.column_transform]
    rows = []
    rank = len(sf.pivot_valuations)
    for t, v in enumerate(sf.pivot_valuations):
        if v == 0:
            continue
        scale = ring.element(ring.p ** (ring.s - v))
        rows.append(tuple((scale * Q[i][t]).index for i in range(n)))
    for j in range(rank, n):
        rows.append(tuple(Q[i][j].index for i in range(n)))
    return tuple(rows)


def dual_code_standard(code: LinearCode) -> LinearCode:
    """Dual via the parity-check construction; no ambient enumeration."""
    return LinearCode(code.ring, code.n, parity_check_rows(standard_form(code), code.ring))


def dual_subtype(subtype: Sequence[int], n: int) -> tuple[int, ...]:
    k = sum(subtype)
    return (n - k,) + tuple(reversed(subtype[1:]))


# -- enumerators ----------------------------------------------------------------


@dataclass(frozen=True)
class Enumerator:
    partition: str
    entries: dict  # decomposition -> count

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def get(self, pi: Sequence[int]) -> int:
        return self.entries.get(tuple(pi), 0)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Nonzero entries in canonical decomposition order."""
        if not self.entries:
            return []
        first = next(iter(self.entries))
        order = all_decompositions(len(first), sum(first))
        return [(d, self.entries[d]) for d in order if self.entries.get(d)]

    def to_json(self) -> dict:
        return {"partition": self.partition, "entries": [{"pi": list(d), "count": c} for d, c in self.items()]}


def enumerator_from_json(obj: dict) -> Enumerator:
    unknown = set(obj) - {"partition", "entries"}
    if unknown:
        raise CodeError(f"unknown enumerator fields: {sorted(unknown)}")
    entries: dict[tuple[int, ...], int] = {}
    for row in obj["entries"]:
        extra = set(row) - {"pi", "count"}
        if extra:
            raise CodeError(f"unknown enumerator entry fields: {sorted(extra)}")
        key = tuple(int(v) for v in row["pi"])
        count = int(row["count"])
        if count < 0:
            raise CodeError(f"negative count for {key}")
        entries[key] = entries.get(key, 0) + count
    return Enumerator(str(obj["partition"]), entries)


def word_decompositions(partition: AlphabetPartition, words: np.ndarray) -> np.ndarray:
    """Block-count vectors for many words at once, shape (len(words), B)."""
    lookup = np.asarray(partition.block_of, dtype=np.int64)
    blocks = lookup[words]
    B = partition.block_count
    return np.stack([(blocks == b).sum(axis=1) for b in range(B)], axis=1)


def decomposition_enumerator(code: LinearCode, partition: AlphabetPartition) -> Enumerator:
    if partition.ring != code.ring:
        raise CodeError("partition and code live over different rings")
    counts = Counter(map(tuple, word_decompositions(partition, code.codewords).tolist()))
    return Enumerator(partition.kind, dict(counts))


def aggregate_weights(enum: Enumerator, partition: AlphabetPartition, kind: WeightKind) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    for pi, c in enum.entries.items():
        if c:
            w = decomposition_weight(pi, partition, kind)
            out[w] = out.get(w, 0) + c
    return dict(sorted(out.items()))


def weight_enumerator(code: LinearCode, kind: WeightKind, partition: AlphabetPartition | None = None) -> dict[Fraction, int]:
    """Weight distribution via a decomposition enumerator (Lee-refined by default when possible)."""
    if partition is None:
        return weight_enumerator_direct(code, kind)
    return aggregate_weights(decomposition_enumerator(code, partition), partition, kind)


def weight_enumerator_direct(code: LinearCode, kind: WeightKind) -> dict[Fraction, int]:
    kind.check_ring(code.ring)
    wt = weight_by_index(kind, code.ring)
    out: dict[Fraction, int] = {}
    for word in code.codewords.tolist():
        w = sum((wt[v] for v in word), Fraction(0))
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


def minimum_weight(code: LinearCode, kind: WeightKind) -> Fraction | None:
    """Smallest nonzero weight; None for the zero code."""
    nonzero = [w for w in weight_enumerator_direct(code, kind) if w > 0]
    return min(nonzero) if nonzero else None


# -- small-code generation --------------------------------------------------------


def random_code(ring: RingSpec, n: int, rng: np.random.Generator, max_rows: int | None = None) -> LinearCode:
    """Random generator matrix with 1..max_rows rows (default n)."""
    max_rows = n if max_rows is None else max_rows
    k = int(rng.integers(1, max_rows + 1))
    rows = rng.integers(0, ring.size, size=(k, n)).tolist()
    return LinearCode(ring, n, rows)


def all_linear_codes(ring: RingSpec, n: int, max_rows: int | None = None) -> Iterator[LinearCode]:
    """Every submodule of R^n, each once, from all generator sets of up to ``max_rows`` rows.

    A submodule of R^n over a chain ring needs at most n generators, so the
    default ``max_rows = n`` reaches all of them.
    """
    max_rows = n if max_rows is None else max_rows
    words = [tuple(w) for w in product(range(ring.size), repeat=n)]
    check_guard("generator candidates", len(words) ** max_rows)
    seen: set[bytes] = set()
    zero = zero_code(ring, n)
    seen.add(zero._keys.tobytes())
    yield zero
    frontier = [zero]
    for _ in range(max_rows):
        nxt = []
        for code in frontier:
            for w in words:
                if w in code:
                    continue
                cand = LinearCode(ring, n, code.generators + (w,))
                key = cand._keys.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
                    yield cand
        frontier = nxt
