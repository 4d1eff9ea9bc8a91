import itertools
from fractions import Fraction

import numpy as np
import pytest

from macwilliams.partitions import (
    PartitionError,
    all_decompositions,
    applicable_partitions,
    build_partition,
    class_map,
    composition_tables,
    decompose,
    decomposition_count,
    decomposition_weight,
    push_forward,
)
from macwilliams.ring import build_ring, units
from macwilliams.weights import HAMMING, HOMOGENEOUS, LEE, WeightError, element_weight, parse_weight, subfield, tuple_weight

Z9 = build_ring(3, 1, 2)
Z27 = build_ring(3, 1, 3)
F8 = build_ring(2, 3, 1)
F27 = build_ring(3, 3, 1)
GR42 = build_ring(2, 2, 2)


def test_element_weights():
    assert element_weight(LEE, Z9(8)) == 1
    assert element_weight(HOMOGENEOUS, Z9(3)) == Fraction(3, 2)
    assert element_weight(HOMOGENEOUS, Z9(2)) == 1
    lam = Fraction(5, 2)
    assert element_weight(subfield(lam), F8.generator()) == lam
    assert element_weight(subfield(lam), F8.one) == 1


def test_tuple_weights():
    assert tuple_weight(LEE, [3, 2, 8], Z9) == 6
    assert tuple_weight(HAMMING, [0, 3, 3], Z9) == 2
    assert tuple_weight(HOMOGENEOUS, [3, 2, 8], Z9) == Fraction(7, 2)


def test_weight_applicability():
    with pytest.raises(WeightError):
        element_weight(LEE, F8.generator())
    with pytest.raises(WeightError):
        element_weight(subfield(2), Z9(1))


def test_parse_weight():
    assert parse_weight("lee") == LEE
    assert parse_weight("subfield:3/2") == subfield(Fraction(3, 2))
    with pytest.raises(WeightError):
        parse_weight("lee:2")


def test_lee_blocks_z9():
    P = build_partition("lee", Z9)
    assert P.blocks == ((0,), (1, 8), (2, 7), (3, 6), (4, 5))


def test_hom_blocks_z9():
    P = build_partition("hom", Z9)
    assert P.labels == ("Z", "U", "S")
    assert P.sizes() == (1, 6, 2)
    assert P.blocks[2] == (3, 6)


def test_hom_blocks_z27_sizes():
    P = build_partition("hom", Z27)
    assert P.labels == ("Z", "U", "S", "R")
    assert P.sizes() == (1, 18, 2, 6)


def test_subfield_blocks_f27():
    P = build_partition("subfield", F27)
    assert P.block_count == 14
    assert P.blocks[0] == (0,)
    assert all(len(b) == 2 for b in P.blocks[1:])


def test_partitions_cover_ring():
    for ring in (Z9, Z27, F8, F27, GR42):
        for kind in applicable_partitions(ring):
            P = build_partition(kind, ring)
            flat = sorted(e for b in P.blocks for e in b)
            assert flat == list(range(ring.size))
            assert P.blocks[0] == (0,)


def test_field_has_no_hom_partition():
    with pytest.raises(PartitionError):
        build_partition("hom", F8)
    with pytest.raises(PartitionError):
        build_partition("subfield", Z9)


def test_decompose():
    assert decompose(build_partition("lee", Z9), [3, 2, 8]) == (0, 1, 1, 1, 0)
    assert decompose(build_partition("hom", Z9), [3, 2, 8]) == (0, 2, 1)
    assert decompose(build_partition("lee", Z9), [0, 0, 0]) == (3, 0, 0, 0, 0)


def test_all_decompositions_counts():
    assert all_decompositions(1, 4) == ((4,),)
    # independent count: histograms of all block-label tuples
    for B, n in [(5, 3), (4, 3), (3, 4), (2, 0)]:
        brute = {tuple(t.count(b) for b in range(B)) for t in itertools.product(range(B), repeat=n)}
        decs = all_decompositions(B, n)
        assert set(decs) == brute and len(decs) == len(brute) == decomposition_count(B, n)
        assert decs[0] == (n,) + (0,) * (B - 1)
    assert len(all_decompositions(5, 3)) == 35
    assert len(all_decompositions(4, 3)) == 20


def _brute_tables(pi, rho):
    B = len(pi)
    out = set()
    ranges = [range(min(pi[i], rho[j]) + 1) for i in range(B) for j in range(B)]
    for cells in itertools.product(*ranges):
        T = [cells[i * B:(i + 1) * B] for i in range(B)]
        if all(sum(T[i]) == pi[i] for i in range(B)) and all(sum(T[i][j] for i in range(B)) == rho[j] for j in range(B)):
            out.add(tuple(map(tuple, T)))
    return out


def test_composition_tables_examples():
    assert len(composition_tables((3, 0, 0, 0, 0), (2, 0, 0, 1, 0))) == 1
    assert len(composition_tables((1, 0, 0, 2, 0), (2, 0, 0, 1, 0))) == 2
    assert composition_tables((3, 0), (3, 0)) == [((3, 0), (0, 0))]


def test_composition_tables_against_brute_force():
    for B, n in [(2, 3), (3, 2), (3, 3)]:
        decs = all_decompositions(B, n)
        for pi, rho in itertools.product(decs, repeat=2):
            got = composition_tables(pi, rho)
            assert len(got) == len(set(got))
            assert set(got) == _brute_tables(pi, rho)


def test_decomposition_weights():
    assert decomposition_weight((0, 1, 1, 1, 0), build_partition("lee", Z9), LEE) == 6
    assert decomposition_weight((0, 2, 1), build_partition("hom", Z9), HOMOGENEOUS) == Fraction(7, 2)
    assert decomposition_weight((3, 0, 0), build_partition("hom", Z9), HOMOGENEOUS) == 0


def test_lee_refines_coarser_partitions():
    for ring in (Z9, Z27, GR42):
        lee = build_partition("lee", ring)
        for coarse in ("hom", "hamming"):
            mapping = class_map(lee, build_partition(coarse, ring))
            assert mapping[0] == 0
    lee = build_partition("lee", Z9)
    hom = build_partition("hom", Z9)
    mapping = class_map(lee, hom)
    assert push_forward((0, 1, 1, 1, 0), mapping, hom.block_count) == (0, 2, 1)


def test_unit_scaling_permutes_lee_blocks():
    for ring in (Z9, Z27, build_ring(5, 1, 1)):
        P = build_partition("lee", ring)
        for u in units(ring):
            images = sorted(tuple(sorted({int(ring.mul_table[u.index, e]) for e in b})) for b in P.blocks)
            assert images == sorted(P.blocks)


def test_plain_weight_partition():
    P = build_partition("weight:lee", Z9)
    assert P.labels == ("0", "1", "2", "3", "4")
    assert P.sizes() == (1, 2, 2, 2, 2)


def _kinds_for(ring):
    kinds = [HAMMING, HOMOGENEOUS]
    if ring.r == 1:
        kinds.append(LEE)
    if ring.s == 1:
        kinds.append(subfield(Fraction(7, 3)))
    return kinds


@pytest.mark.parametrize("ring", [Z9, Z27, F8, F27, GR42, build_ring(2, 1, 3), build_ring(5, 1, 2)], ids=lambda r: r.name)
def test_weight_symmetry_and_triangle_inequality(ring):
    els = ring.elements()
    for kind in _kinds_for(ring):
        w = {e.index: element_weight(kind, e) for e in els}
        assert w[0] == 0
        for a in els:
            assert w[a.index] == w[(-a).index]
            assert w[a.index] > 0 or a.is_zero()
        for a, b in itertools.product(els, repeat=2):
            assert w[(a + b).index] <= w[a.index] + w[b.index]


def test_hamming_lee_sandwich():
    rng = np.random.default_rng(1)
    for ring in (Z9, Z27, build_ring(2, 1, 3)):
        for _ in range(200):
            x = rng.integers(0, ring.size, size=4).tolist()
            h, l = tuple_weight(HAMMING, x, ring), tuple_weight(LEE, x, ring)
            assert h <= l <= (ring.m // 2) * h


def test_homogeneous_is_hamming_over_fields():
    for ring in (build_ring(2, 2, 1), F8):
        for e in ring.elements():
            assert element_weight(HOMOGENEOUS, e) == element_weight(HAMMING, e)
