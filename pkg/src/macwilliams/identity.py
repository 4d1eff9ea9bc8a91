"""Dual decomposition enumerators predicted from the primal code, and their verification."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .codes import (
    Enumerator,
    LinearCode,
    aggregate_weights,
    all_linear_codes,
    code_from_generator,
    decomposition_enumerator,
    dual_code,
    random_code,
    weight_enumerator_direct,
)
from .cyclotomic import CycInt, NotRational, to_rational
from .krawtchouk import kraw, kraw_hamming
from .partitions import AlphabetPartition, all_decompositions, build_partition, class_map, push_forward
from .ring import RingSpec, build_ring
from .weights import WeightKind, subfield


class NonIntegerResult(ArithmeticError):
    """The transform produced a non-integer count, which can only mean a bug upstream."""


def identity_rhs(enum: Enumerator, partition: AlphabetPartition, rho: Sequence[int], code_size: int | None = None) -> Fraction:
    """(1/|C|) sum_pi K_pi(rho) E_pi(C)."""
    size = enum.total if code_size is None else code_size
    acc = CycInt.integer(partition.ring.m, 0)
    for pi, count in enum.entries.items():
        if count:
            acc = acc + kraw(partition, pi, rho) * count
    try:
        return to_rational(acc) / size
    except NotRational:
        raise NonIntegerResult(f"transform at rho={tuple(rho)} left an irrational part {acc!r}") from None


def _checked_int(value: Fraction, rho) -> int:
    if value.denominator != 1:
        raise NonIntegerResult(f"predicted count {value} at rho={rho} is not an integer")
    if value < 0:
        raise NonIntegerResult(f"predicted count {value} at rho={rho} is negative")
    return int(value)


def _predict_chunk(args) -> list[tuple[tuple[int, ...], int]]:
    enum, partition, rhos = args
    return [(rho, _checked_int(identity_rhs(enum, partition, rho), rho)) for rho in rhos]


def predicted_dual_enumerator(enum: Enumerator, partition: AlphabetPartition, n: int, jobs: int = 1) -> Enumerator:
    """Dual decomposition enumerator computed only from E(C)."""
    rhos = all_decompositions(partition.block_count, n)
    if jobs <= 1 or len(rhos) < 2 * jobs:
        rows = _predict_chunk((enum, partition, rhos))
    else:
        chunks = [rhos[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_predict_chunk, [(enum, partition, c) for c in chunks]))
        order = {r: i for i, r in enumerate(rhos)}
        rows = sorted((row for part in parts for row in part), key=lambda row: order[row[0]])
    return Enumerator(partition.kind, {rho: v for rho, v in rows if v})


@dataclass
class IdentityReport:
    kind: str
    rows: list = field(default_factory=list)  # (rho, predicted, observed, match)
    passed: bool = True
    seconds: float = 0.0

    def failures(self) -> list:
        return [r for r in self.rows if not r[3]]

    def to_json(self) -> dict:
        return {
            "partition": self.kind,
            "passed": self.passed,
            "seconds": round(self.seconds, 6),
            "rows": [{"rho": list(r[0]), "predicted": r[1], "observed": r[2], "match": r[3]} for r in self.rows],
        }


def _compare(kind: str, predicted: dict, observed: dict, keys: Iterable) -> IdentityReport:
    report = IdentityReport(kind)
    for key in keys:
        a, b = predicted.get(key, 0), observed.get(key, 0)
        if a or b:
            report.rows.append((key, a, b, a == b))
    report.passed = all(r[3] for r in report.rows)
    return report


def verify_identity(code: LinearCode, partition: AlphabetPartition, *, enum: Enumerator | None = None, jobs: int = 1) -> IdentityReport:
    """Predicted dual enumerator against the enumerator of the brute-force dual."""
    t0 = time.perf_counter()
    enum = decomposition_enumerator(code, partition) if enum is None else enum
    predicted = predicted_dual_enumerator(enum, partition, code.n, jobs=jobs)
    observed = decomposition_enumerator(dual_code(code), partition)
    report = _compare(partition.kind, predicted.entries, observed.entries, all_decompositions(partition.block_count, code.n))
    report.seconds = time.perf_counter() - t0
    return report


def verify_from_enumerator(enum: Enumerator, partition: AlphabetPartition, n: int, dual_enum: Enumerator | None = None) -> IdentityReport:
    """Check a precomputed enumerator: integrality always, and equality if the dual's enumerator is given."""
    t0 = time.perf_counter()
    predicted = predicted_dual_enumerator(enum, partition, n)
    observed = dual_enum.entries if dual_enum is not None else predicted.entries
    report = _compare(partition.kind, predicted.entries, observed, all_decompositions(partition.block_count, n))
    report.seconds = time.perf_counter() - t0
    return report


def verify_weight_aggregation(code: LinearCode, lee: AlphabetPartition, kind: WeightKind) -> IdentityReport:
    """Dual weight enumerator for ``kind`` obtained by aggregating the Lee-partition prediction."""
    enum = decomposition_enumerator(code, lee)
    predicted = aggregate_weights(predicted_dual_enumerator(enum, lee, code.n), lee, kind)
    observed = weight_enumerator_direct(dual_code(code), kind)
    keys = sorted(set(predicted) | set(observed))
    return _compare(f"lee->{kind}", predicted, observed, keys)


def verify_refinement(code: LinearCode, fine: AlphabetPartition, coarse: AlphabetPartition) -> IdentityReport:
    """Pushing the fine-partition prediction forward must give the coarse dual enumerator."""
    mapping = class_map(fine, coarse)
    predicted: dict = {}
    for rho, c in predicted_dual_enumerator(decomposition_enumerator(code, fine), fine, code.n).entries.items():
        key = push_forward(rho, mapping, coarse.block_count)
        predicted[key] = predicted.get(key, 0) + c
    observed = decomposition_enumerator(dual_code(code), coarse).entries
    return _compare(f"{fine.kind}->{coarse.kind}", predicted, observed, all_decompositions(coarse.block_count, code.n))


# -- classical Hamming identities -------------------------------------------------


def hamming_distribution(code: LinearCode) -> list[int]:
    words = code.codewords
    w = (words != 0).sum(axis=1)
    return np.bincount(w, minlength=code.n + 1).tolist()


def verify_classical_hamming(code: LinearCode) -> IdentityReport:
    """Binomial-moment form for every nu and Krawtchouk form for every j, over a field."""
    ring = code.ring
    if ring.s != 1:
        raise ValueError(f"classical identities need a field, not {ring.name}")
    t0 = time.perf_counter()
    n, q = code.n, ring.q
    A = hamming_distribution(code)
    B = hamming_distribution(dual_code(code))
    size = code.size
    report = IdentityReport("hamming")
    for j in range(n + 1):
        pred = Fraction(sum(A[i] * kraw_hamming(n, q, i, j) for i in range(n + 1)), size)
        report.rows.append((("krawtchouk", j), pred, B[j], pred == B[j]))
    for nu in range(n + 1):
        lhs = sum(comb(n - j, nu) * A[j] for j in range(n + 1))
        # q^(n - nu) / |C^perp| = q^(k - nu) with k the dimension of C
        rhs = Fraction(q ** (n - nu), sum(B)) * sum(comb(n - j, n - nu) * B[j] for j in range(n + 1))
        report.rows.append((("moment", nu), lhs, rhs, lhs == rhs))
    report.passed = all(r[3] for r in report.rows)
    report.seconds = time.perf_counter() - t0
    return report


# -- the F_8 subfield counterexample ------------------------------------------------

F8_REFERENCE_C1 = {(3, 0, 0): 1, (0, 0, 3): 4, (0, 1, 2): 3}
F8_REFERENCE_C2_DUAL = {(3, 0, 0): 1, (0, 0, 3): 27, (1, 0, 2): 15, (0, 2, 1): 3, (0, 1, 2): 12, (1, 1, 1): 6}
F8_REFERENCE_C1_DUAL = {(3, 0, 0): 1, (0, 0, 3): 26, (1, 0, 2): 15, (0, 1, 2): 15, (1, 1, 1): 6}


@dataclass
class CounterexampleReport:
    c1: LinearCode
    c2: LinearCode | None
    c2_literal: LinearCode
    profiles: dict  # name -> {decomposition: count}
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        def table(d):
            return [{"pi": list(k), "count": v} for k, v in sorted(d.items(), reverse=True)]

        return {
            "C1": self.c1.to_json(),
            "C2": self.c2.to_json() if self.c2 else None,
            "C2_literal": self.c2_literal.to_json(),
            "profiles": {k: table(v) for k, v in self.profiles.items()},
            "notes": self.notes,
        }


def _profile(code: LinearCode, part: AlphabetPartition) -> dict:
    return dict(decomposition_enumerator(code, part).entries)


def reproduce_subfield_counterexample() -> CounterexampleReport:
    """C1 = <(1, a, a^2)> over F_8 and a same-profile C2 whose dual profile differs."""
    F = build_ring(2, 3, 1)
    a = F.generator()
    part = build_partition("weight:subfield", F)
    c1 = code_from_generator(F, [[F.one, a, a**2]])
    c1_prof = _profile(c1, part)
    c1_dual = _profile(dual_code(c1), part)
    # the reference generator (a^2 + 2, 2a + 1, a^2 + 1) read with 2 = 0
    literal = code_from_generator(F, [[a**2, F.one, a**2 + F.one]])
    literal_dual = _profile(dual_code(literal), part)

    found = None
    for code in all_linear_codes(F, 3, max_rows=1):
        if code.size != F.size or code.same_code(c1):
            continue
        if _profile(code, part) != c1_prof:
            continue
        if _profile(dual_code(code), part) == F8_REFERENCE_C2_DUAL:
            found = code
            break
    report = CounterexampleReport(c1, found, literal, {
        "C1": c1_prof,
        "C1_dual": c1_dual,
        "C2_literal": _profile(literal, part),
        "C2_literal_dual": literal_dual,
    })
    if found is not None:
        report.profiles["C2"] = _profile(found, part)
        report.profiles["C2_dual"] = _profile(dual_code(found), part)
    reference_total = sum(F8_REFERENCE_C1_DUAL.values())
    report.notes.append(f"reference C1-dual column sums to {reference_total}, |C1-dual| = {dual_code(c1).size}")
    if c1_dual == F8_REFERENCE_C2_DUAL:
        report.notes.append("recomputed C1-dual profile equals the reference C2-dual column")
    missing = {k: v for k, v in literal_dual.items() if F8_REFERENCE_C1_DUAL.get(k, 0) != v}
    if missing:
        report.notes.append(f"dual of the literal C2 differs from the reference C1-dual column at {sorted(missing.items())}")
    return report


# -- counterexample search -----------------------------------------------------------


def _fingerprint(code: LinearCode, kind: WeightKind) -> tuple:
    return tuple(weight_enumerator_direct(code, kind).items())


def counterexample_search(ring: RingSpec, kind: WeightKind, n: int, budget: int = 2000, seed: int = 0) -> tuple[LinearCode, LinearCode] | None:
    """Two codes with equal weight enumerators whose duals' enumerators differ.

    Candidates come from exhaustive enumeration of submodules of R^n when
    that fits in ``budget``, otherwise from random generator matrices.
    """
    kind.check_ring(ring)
    groups: dict[tuple, list[tuple[LinearCode, tuple]]] = {}
    for code in _candidates(ring, n, budget, seed):
        fp = _fingerprint(code, kind)
        dual_fp = _fingerprint(dual_code(code), kind)
        for other, other_dual_fp in groups.get(fp, []):
            if other_dual_fp != dual_fp and _recheck(other, code, kind):
                return other, code
        groups.setdefault(fp, []).append((code, dual_fp))
    return None


def _candidates(ring: RingSpec, n: int, budget: int, seed: int):
    if (ring.size**n) ** n <= budget:
        yield from all_linear_codes(ring, n)
        return
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        yield random_code(ring, n, rng)


def _recheck(c1: LinearCode, c2: LinearCode, kind: WeightKind) -> bool:
    """Recount everything from the codeword lists before reporting a pair."""
    from .weights import weight_by_index

    wt = weight_by_index(kind, c1.ring)

    def tally(words):
        out: dict = {}
        for w in words.tolist():
            key = sum((wt[v] for v in w), Fraction(0))
            out[key] = out.get(key, 0) + 1
        return out

    d1, d2 = dual_code(c1), dual_code(c2)
    return tally(c1.codewords) == tally(c2.codewords) and tally(d1.codewords) != tally(d2.codewords)


__all__ = [
    "NonIntegerResult",
    "IdentityReport",
    "identity_rhs",
    "predicted_dual_enumerator",
    "verify_identity",
    "verify_from_enumerator",
    "verify_weight_aggregation",
    "verify_refinement",
    "verify_classical_hamming",
    "reproduce_subfield_counterexample",
    "counterexample_search",
    "subfield",
]
