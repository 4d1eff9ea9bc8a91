"""Krawtchouk coefficients for decomposition partitions.

The closed form used everywhere is

    K_pi(rho) = sum_{t in Comp_pi(rho)} prod_i multinomial(pi_i; t_i) * prod_{i,j} c[i][j]^t_ij

where ``c[i][j] = sum_{x in block j} xi^trace(alpha_i x)`` is the block-pair
table.  Lee, Z/U/S/R and subfield-orbit partitions are all instances of it.  Values
live in Z[xi] and are real but not always rational (Lee blocks over Z/9
already give xi + xi^-1); only the full transform sum is guaranteed rational.
Per-metric formulas (``kraw_lee_formula`` and friends) are kept as
cross-checks, and :func:`kraw_oracle` sums characters directly over
``R^n`` without using any of the above.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Callable, Sequence

import numpy as np

from .cyclotomic import CycInt, to_rational
from .guards import check_guard
from .partitions import AlphabetPartition, all_decompositions, composition_tables, decompose
from .ring import RingSpec, trace

ORACLE_GUARD = 10**7


class NotFourierInvariant(ValueError):
    """A block sum depends on the chosen representative."""


def multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for k in parts:
        out //= factorial(k)
    return out


# -- block-pair table -----------------------------------------------------------


def _block_sum(ring: RingSpec, a: int, block: Sequence[int]) -> CycInt:
    row = ring.trace_product_table[a]
    return CycInt.from_powers(ring.m, (int(row[x]) for x in block))


@lru_cache(maxsize=None)
def block_pair_table(partition: AlphabetPartition) -> tuple[tuple[CycInt, ...], ...]:
    """c[i][j] for every block pair, checked against every representative of block i."""
    ring = partition.ring
    table = []
    for i, blk_i in enumerate(partition.blocks):
        row = tuple(_block_sum(ring, blk_i[0], blk_j) for blk_j in partition.blocks)
        for a in blk_i[1:]:
            other = tuple(_block_sum(ring, a, blk_j) for blk_j in partition.blocks)
            if other != row:
                raise NotFourierInvariant(
                    f"{partition.kind} partition of {ring.name}: block {i} row depends on representative "
                    f"({ring.from_index(blk_i[0])!r} vs {ring.from_index(a)!r})"
                )
        table.append(row)
    return tuple(table)


def is_block_invariant(partition: AlphabetPartition) -> bool:
    try:
        block_pair_table(partition)
    except NotFourierInvariant:
        return False
    return True


@lru_cache(maxsize=None)
def _power(partition: AlphabetPartition, i: int, j: int, k: int) -> CycInt:
    return block_pair_table(partition)[i][j] ** k


def kraw(partition: AlphabetPartition, pi: Sequence[int], rho: Sequence[int]) -> CycInt:
    """Closed-form Krawtchouk coefficient K_pi(rho), exact in Z[xi]."""
    pi, rho = tuple(pi), tuple(rho)
    B = partition.block_count
    if len(pi) != B or len(rho) != B:
        raise ValueError(f"decompositions must have {B} entries")
    if sum(pi) != sum(rho):
        raise ValueError(f"pi and rho describe different lengths: {sum(pi)} vs {sum(rho)}")
    return _kraw_cached(partition, pi, rho)


@lru_cache(maxsize=200_000)
def _kraw_cached(partition: AlphabetPartition, pi: tuple[int, ...], rho: tuple[int, ...]) -> CycInt:
    table = block_pair_table(partition)
    m = partition.ring.m
    acc = [0] * m
    for t in composition_tables(pi, rho):
        if any(t[i][j] and table[i][j] == 0 for i in range(len(t)) for j in range(len(t))):
            continue
        coef = prod(multinomial(row) for row in t)
        term = CycInt.integer(m, coef)
        for i, row in enumerate(t):
            for j, k in enumerate(row):
                if k:
                    term = term * _power(partition, i, j, k)
        acc = [x + y for x, y in zip(acc, term.coeffs)]
    return CycInt(m, acc)


def kraw_rational(partition: AlphabetPartition, pi: Sequence[int], rho: Sequence[int]) -> Fraction:
    """K_pi(rho) as a rational; raises NotRational when it has an irrational part."""
    return to_rational(kraw(partition, pi, rho))


def kraw_matrix(partition: AlphabetPartition, n: int) -> tuple[tuple[tuple[int, ...], ...], list[list[CycInt]]]:
    """All decompositions D and the matrix K[a][b] = K_{D[a]}(D[b])."""
    decs = all_decompositions(partition.block_count, n)
    return decs, [[kraw(partition, pi, rho) for rho in decs] for pi in decs]


def kraw_hamming(n: int, q: int, i: int, j: int) -> int:
    """Classical Krawtchouk number sum_k (-1)^k (q-1)^(j-k) C(i,k) C(n-i,j-k)."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"need 0 <= i, j <= n, got i={i}, j={j}, n={n}")
    return sum((-1) ** k * (q - 1) ** (j - k) * comb(i, k) * comb(n - i, j - k) for k in range(j + 1))


# -- per-metric closed forms, kept as cross-checks ----------------------------------


def _sum_compositions(pi, rho, factor: Callable[[int, int], CycInt | int], m: int) -> CycInt:
    total = CycInt.integer(m, 0)
    for t in composition_tables(pi, rho):
        term = CycInt.integer(m, prod(multinomial(row) for row in t))
        for i, row in enumerate(t):
            for j, k in enumerate(row):
                if k:
                    f = factor(i, j)
                    term = term * (f**k if isinstance(f, CycInt) else CycInt.integer(m, f**k))
        total = total + term
    return total


def kraw_lee_formula(ring: RingSpec, pi: Sequence[int], rho: Sequence[int]) -> CycInt:
    """Lee-metric formula over Z/p^s, odd p: factors xi^(-ij) + xi^(ij) for j >= 1."""
    if ring.r != 1 or ring.p == 2:
        raise ValueError("the per-block Lee formula is implemented for Z/p^s with odd p only")
    m = ring.m

    def factor(i: int, j: int):
        if j == 0:
            return 1
        return CycInt.from_powers(m, [-i * j, i * j])

    return _sum_compositions(tuple(pi), tuple(rho), factor, m)


def _hom_full(vec: Sequence[int], labels: Sequence[str]) -> dict[str, int]:
    if len(vec) == 4:
        labels = "ZUSR"
    elif len(vec) != len(labels):
        raise ValueError(f"expected {len(labels)} or 4 entries, got {len(vec)}")
    full = dict.fromkeys("ZUSR", 0)
    for lab, v in zip(labels, vec):
        full[lab] = v
    return full


def kraw_hom_formula(partition: AlphabetPartition, pi: Sequence[int], rho: Sequence[int], *, sr_on_q_minus_1: bool = False) -> CycInt:
    """Z/U/S/R formula written in terms of the composition entries t_IJ.

    ``sr_on_q_minus_1=True`` attaches the exponent t_SR to (q - 1);
    ``False`` attaches it to q^(s-1) - q, the (S, R) cell of the block-pair
    table.  The two agree unless R is non-empty, i.e. s >= 3, and only the
    second matches the character-sum oracle there.
    """
    if partition.kind != "hom":
        raise ValueError("expected a Z/U/S/R partition")
    ring = partition.ring
    q, s = ring.q, ring.s
    labs = "ZUSR"
    pi_f = _hom_full(pi, partition.labels)
    rho_f = _hom_full(rho, partition.labels)
    pi4 = tuple(pi_f[k] for k in labs)
    rho4 = tuple(rho_f[k] for k in labs)
    total = 0
    for t in composition_tables(pi4, rho4):
        T = {(labs[i], labs[j]): t[i][j] for i in range(4) for j in range(4)}
        if T["U", "U"] or T["U", "R"] or T["R", "U"]:
            continue
        term = prod(multinomial(row) for row in t)
        term *= (-1) ** T["U", "S"] * (-(q ** (s - 1))) ** T["S", "U"]
        term *= (q ** (s - 1) * (q - 1)) ** T["Z", "U"] * (q ** (s - 1) - q) ** T["Z", "R"]
        qm1_exp = T["Z", "S"] + T["S", "S"] + T["R", "S"]
        if sr_on_q_minus_1:
            qm1_exp += T["S", "R"]
        else:
            term *= (q ** (s - 1) - q) ** T["S", "R"]
        term *= (q - 1) ** qm1_exp * (-q) ** T["R", "R"]
        total += term
    return CycInt.integer(ring.m, total)


def kraw_subfield_formula(partition: AlphabetPartition, pi: Sequence[int], rho: Sequence[int]) -> CycInt:
    """Subfield-orbit formula: factor sum_{c in F_p^x} xi^trace(c alpha_i alpha_j) for j >= 1."""
    if partition.kind != "subfield":
        raise ValueError("expected a subfield-orbit partition")
    ring = partition.ring
    factors = _subfield_factors(partition)
    return _sum_compositions(tuple(pi), tuple(rho), lambda i, j: factors[i, j], ring.m)


@lru_cache(maxsize=16)
def _subfield_factors(partition: AlphabetPartition) -> dict:
    ring = partition.ring
    reps = [ring.from_index(b[0]) for b in partition.blocks]
    out = {}
    for i, j in itertools.product(range(partition.block_count), repeat=2):
        if j == 0:
            out[i, j] = 1
        else:
            prod_ij = reps[i] * reps[j]
            out[i, j] = CycInt.from_powers(ring.m, [trace(ring.element(c) * prod_ij) for c in range(1, ring.p)])
    return out


def lee_zero_row_formula(ring: RingSpec, rho: Sequence[int]) -> int:
    """multinomial(n; rho) * 2^(n - rho_0 [- rho_M for p = 2]) for Z/p^s."""
    n = sum(rho)
    exp = n - rho[0]
    if ring.p == 2:
        exp -= rho[-1]
    return multinomial(rho) * 2**exp


# -- brute-force oracle -------------------------------------------------------


@dataclass
class _Ambient:
    tuples: np.ndarray  # (|R|^n, n) element indices
    labels: np.ndarray  # label id per tuple
    label_values: list  # label id -> decomposition (or weight)


@lru_cache(maxsize=32)
def _ambient(partition: AlphabetPartition, n: int) -> _Ambient:
    ring = partition.ring
    check_guard(f"ambient space |{ring.name}|^{n}", ring.size**n, ORACLE_GUARD)
    X = _all_tuples(ring.size, n)
    lookup = np.asarray(partition.block_of, dtype=np.int64)
    decs = all_decompositions(partition.block_count, n)
    pos = {d: i for i, d in enumerate(decs)}
    B = partition.block_count
    counts = np.zeros((X.shape[0], B), dtype=np.int64)
    for k in range(n):
        np.add.at(counts, (np.arange(X.shape[0]), lookup[X[:, k]]), 1)
    labels = np.fromiter((pos[tuple(row)] for row in counts.tolist()), dtype=np.int64, count=X.shape[0])
    return _Ambient(X, labels, list(decs))


def _all_tuples(size: int, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((size,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def _character_rows(ring: RingSpec, amb: _Ambient, a: Sequence[int]) -> np.ndarray:
    """Exponent histogram of chi_a over each label class, shape (labels, m)."""
    tp = ring.trace_product_table
    X = amb.tuples
    e = np.zeros(X.shape[0], dtype=np.int64)
    for k, ak in enumerate(a):
        e += tp[ak][X[:, k]]
    e %= ring.m
    L = len(amb.label_values)
    hist = np.bincount(amb.labels * ring.m + e, minlength=L * ring.m)
    return hist.reshape(L, ring.m)


def _row_value(ring: RingSpec, hist_row: np.ndarray) -> CycInt:
    return CycInt.from_histogram(ring.m, hist_row.tolist())


def kraw_oracle(partition: AlphabetPartition, pi: Sequence[int], rho: Sequence[int], a: Sequence[int] | None = None) -> CycInt:
    """sum of chi_a(x) over every x in R^n with decomposition rho, for one a with decomposition pi."""
    ring = partition.ring
    n = sum(pi)
    if a is None:
        a = representative_tuple(partition, pi)
    elif tuple(decompose(partition, a)) != tuple(pi):
        raise ValueError(f"a={tuple(a)} does not have decomposition {tuple(pi)}")
    amb = _ambient(partition, n)
    hist = _character_rows(ring, amb, [ring.index(int(v)) for v in a])
    row = amb.label_values.index(tuple(rho))
    return _row_value(ring, hist[row])


def representative_tuple(partition: AlphabetPartition, pi: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for blk, c in zip(partition.blocks, pi):
        out.extend([blk[0]] * c)
    return tuple(out)


@dataclass
class OracleTable:
    """Character sums for every pair of label classes of a partition of R^n."""

    labels: list
    values: dict = field(default_factory=dict)  # (pi label, rho label) -> CycInt from first representative
    well_defined: bool = True
    violations: list = field(default_factory=list)

    def rational(self, pi, rho) -> Fraction:
        return to_rational(self.values[pi, rho])


def _oracle_over_labels(ring: RingSpec, amb: _Ambient, sample: int | None, rng) -> OracleTable:
    out = OracleTable(labels=list(amb.label_values))
    L = len(amb.label_values)
    seen_first: dict[int, np.ndarray] = {}
    order = np.arange(amb.tuples.shape[0])
    if sample is not None:
        # keep one member of every class plus a random sample
        firsts = {}
        for idx, lab in enumerate(amb.labels.tolist()):
            firsts.setdefault(lab, idx)
        extra = rng.choice(order, size=min(sample, len(order)), replace=False) if sample else []
        order = np.unique(np.concatenate([np.fromiter(firsts.values(), dtype=np.int64), np.asarray(extra, dtype=np.int64)]))
    for idx in order.tolist():
        a = amb.tuples[idx]
        lab = int(amb.labels[idx])
        hist = _character_rows(ring, amb, a.tolist())
        canon = np.array([CycInt.from_histogram(ring.m, hist[j].tolist()).coeffs for j in range(L)])
        if lab not in seen_first:
            seen_first[lab] = canon
            pi_lab = amb.label_values[lab]
            for j in range(L):
                out.values[pi_lab, amb.label_values[j]] = CycInt(ring.m, canon[j].tolist())
        elif not np.array_equal(seen_first[lab], canon):
            out.well_defined = False
            bad = int(np.nonzero((seen_first[lab] != canon).any(axis=1))[0][0])
            out.violations.append((amb.label_values[lab], amb.label_values[bad], tuple(a.tolist())))
    return out


def oracle_table(partition: AlphabetPartition, n: int, *, sample: int | None = None, seed: int = 0) -> OracleTable:
    """Brute-force K for all decomposition pairs; checks every representative unless ``sample`` is set."""
    amb = _ambient(partition, n)
    return _oracle_over_labels(partition.ring, amb, sample, np.random.default_rng(seed))


def well_defined(partition: AlphabetPartition, pi: Sequence[int], rho: Sequence[int], *, sample: int | None = None, seed: int = 0) -> bool:
    """Whether sum_{x in P_rho} chi_a(x) is the same for every a in P_pi."""
    ring = partition.ring
    n = sum(pi)
    amb = _ambient(partition, n)
    pi_id = amb.label_values.index(tuple(pi))
    rho_id = amb.label_values.index(tuple(rho))
    members = np.nonzero(amb.labels == pi_id)[0]
    if sample is not None and len(members) > sample:
        members = np.random.default_rng(seed).choice(members, size=sample, replace=False)
    ref = None
    for idx in members.tolist():
        row = _character_rows(ring, amb, amb.tuples[idx].tolist())[rho_id]
        val = _row_value(ring, row)
        if ref is None:
            ref = val
        elif val != ref:
            return False
    return True


def weight_partition_table(ring: RingSpec, n: int, weight_of_index: Sequence[Fraction], *, sample: int | None = None, seed: int = 0) -> OracleTable:
    """Oracle for the plain partition of R^n by total weight (not a decomposition partition)."""
    check_guard(f"ambient space |{ring.name}|^{n}", ring.size**n, ORACLE_GUARD)
    X = _all_tuples(ring.size, n)
    w = np.zeros(X.shape[0], dtype=object)
    wt = np.array(weight_of_index, dtype=object)
    for k in range(n):
        w = w + wt[X[:, k]]
    values = sorted(set(w.tolist()))
    pos = {v: i for i, v in enumerate(values)}
    labels = np.fromiter((pos[v] for v in w.tolist()), dtype=np.int64, count=X.shape[0])
    amb = _Ambient(X, labels, values)
    return _oracle_over_labels(ring, amb, sample, np.random.default_rng(seed))
