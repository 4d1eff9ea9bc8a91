from fractions import Fraction

import numpy as np
import pytest

from macwilliams.codes import (
    Enumerator,
    all_linear_codes,
    code_from_generator,
    decomposition_enumerator,
    dual_code,
    full_code,
    random_code,
    zero_code,
)
from macwilliams.identity import (
    F8_REFERENCE_C1,
    F8_REFERENCE_C2_DUAL,
    NonIntegerResult,
    counterexample_search,
    hamming_distribution,
    identity_rhs,
    predicted_dual_enumerator,
    reproduce_subfield_counterexample,
    verify_classical_hamming,
    verify_from_enumerator,
    verify_identity,
    verify_refinement,
    verify_weight_aggregation,
)
from macwilliams.partitions import build_partition
from macwilliams.ring import build_ring
from macwilliams.weights import LEE, subfield

Z4 = build_ring(2, 1, 2)
Z9 = build_ring(3, 1, 2)
Z27 = build_ring(3, 1, 3)
F2 = build_ring(2, 1, 1)
F8 = build_ring(2, 3, 1)
F27 = build_ring(3, 3, 1)
GR42 = build_ring(2, 2, 2)
C9 = code_from_generator(Z9, [[3, 2, 8]])


def test_rhs_examples():
    L = build_partition("lee", Z9)
    assert identity_rhs(decomposition_enumerator(C9, L), L, (2, 0, 0, 1, 0)) == 2
    H = build_partition("hom", Z9)
    assert identity_rhs(decomposition_enumerator(C9, H), H, (2, 0, 1)) == 2
    a = F27.generator()
    S = build_partition("subfield", F27)
    C = code_from_generator(F27, [[F27.one, a, F27.one]])
    rho = (1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0)
    assert identity_rhs(decomposition_enumerator(C, S), S, rho) == Fraction(108, 27)


def test_z9_code_all_partitions():
    for kind in ("lee", "hom", "hamming"):
        assert verify_identity(C9, build_partition(kind, Z9)).passed


def test_zero_code_predicts_full_space():
    for ring in (Z9, F8, GR42):
        L = build_partition("lee", ring)
        n = 2
        pred = predicted_dual_enumerator(decomposition_enumerator(zero_code(ring, n), L), L, n)
        assert pred.entries == decomposition_enumerator(full_code(ring, n), L).entries


def test_inconsistent_enumerator_is_caught():
    L = build_partition("lee", Z9)
    bogus = Enumerator("lee", {(3, 0, 0, 0, 0): 1, (2, 1, 0, 0, 0): 1})
    with pytest.raises(NonIntegerResult):
        predicted_dual_enumerator(bogus, L, 3)


def test_verify_from_enumerator_flags_a_wrong_dual():
    L = build_partition("lee", Z9)
    enum = decomposition_enumerator(C9, L)
    wrong = dict(decomposition_enumerator(dual_code(C9), L).entries)
    wrong[(3, 0, 0, 0, 0)] += 1
    report = verify_from_enumerator(enum, L, 3, Enumerator("lee", wrong))
    assert not report.passed and len(report.failures()) == 1


def test_parallel_matches_serial():
    L = build_partition("lee", Z9)
    C = code_from_generator(Z9, [[1, 3, 4], [0, 3, 6]])
    enum = decomposition_enumerator(C, L)
    assert predicted_dual_enumerator(enum, L, 3, jobs=2).entries == predicted_dual_enumerator(enum, L, 3).entries


@pytest.mark.parametrize("ring", [Z9, Z27, GR42], ids=lambda r: r.name)
def test_refinement_to_coarser_partitions(ring):
    rng = np.random.default_rng(11)
    lee = build_partition("lee", ring)
    for _ in range(8):
        C = random_code(ring, 2, rng)
        for coarse in ("hom", "hamming"):
            assert verify_refinement(C, lee, build_partition(coarse, ring)).passed


def test_subfield_weight_aggregation():
    rng = np.random.default_rng(5)
    lee = build_partition("lee", F27)
    for _ in range(5):
        C = random_code(F27, 2, rng)
        assert verify_weight_aggregation(C, lee, subfield(Fraction(3, 2))).passed


def test_classical_hamming():
    rep = code_from_generator(F2, [[1, 1, 1]])
    report = verify_classical_hamming(rep)
    assert report.passed
    assert hamming_distribution(dual_code(rep)) == [1, 0, 3, 0]
    assert hamming_distribution(dual_code(full_code(F8, 3))) == [1, 0, 0, 0]
    a = F8.generator()
    assert verify_classical_hamming(code_from_generator(F8, [[F8.one, a, a**2]])).passed
    assert verify_classical_hamming(zero_code(F8, 2)).passed
    with pytest.raises(ValueError):
        verify_classical_hamming(C9)


def test_reference_counterexample():
    rep = reproduce_subfield_counterexample()
    assert rep.profiles["C1"] == F8_REFERENCE_C1
    assert rep.profiles["C2_dual"] == F8_REFERENCE_C2_DUAL
    assert rep.profiles["C1_dual"] == F8_REFERENCE_C2_DUAL  # the two dual columns trade places
    assert rep.profiles["C2_literal_dual"][(0, 3, 0)] == 1


def test_counterexample_search():
    assert counterexample_search(Z4, LEE, 2, budget=500) is None
    pair = counterexample_search(F8, subfield(2), 3, budget=500)
    assert pair is not None
    c1, c2 = pair
    assert not c1.same_code(c2)


def test_identities_hold_exhaustively_at_length_two():
    for ring in (Z4, Z9):
        parts = [build_partition(k, ring) for k in ("lee", "hom", "hamming")]
        for C in all_linear_codes(ring, 2):
            for P in parts:
                assert verify_identity(C, P).passed
