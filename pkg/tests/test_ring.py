import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macwilliams.ring import (
    RingError,
    build_ring,
    frobenius,
    ideal,
    inner_product,
    inverse,
    is_unit,
    ring_from_json,
    ring_to_json,
    teichmuller_digits,
    teichmuller_set,
    trace,
    units,
    valuation,
)

Z4 = build_ring(2, 1, 2)
Z9 = build_ring(3, 1, 2)
F4 = build_ring(2, 2, 1)
F8 = build_ring(2, 3, 1)
F27 = build_ring(3, 3, 1)
GR42 = build_ring(2, 2, 2)
SMALL = [Z4, Z9, build_ring(2, 1, 3), build_ring(5, 1, 1), F4, F8, F27, GR42, build_ring(3, 2, 1, h=[1, 0, 1])]


def test_sizes():
    assert Z9.size == 9 and Z9.name == "Z/9"
    assert F8.size == 8 and F8.name == "F_8"
    assert GR42.size == 16 and GR42.name == "GR(4,2)"


def test_builtin_relations():
    a = F8.generator()
    assert a**3 == a + F8.one
    b = F27.generator()
    assert b**3 == b + F27.element(2)


def test_small_arithmetic():
    assert Z9(3) + Z9(8) == Z9(2)
    assert -Z9(4) == Z9(5)
    a = F8.generator()
    assert a * a**2 == a + 1


def test_units_and_valuation():
    assert is_unit(Z9(2)) and not is_unit(Z9(3))
    assert valuation(Z9(3)) == 1
    assert valuation(Z9(0)) == 2
    assert is_unit(F27.generator())


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.name)
def test_unit_and_ideal_counts(ring):
    assert len(units(ring)) == ring.p ** (ring.r * (ring.s - 1)) * (ring.q - 1)
    for i in range(ring.s + 1):
        assert len(ideal(ring, i)) == ring.p ** (ring.r * (ring.s - i))


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.name)
def test_inverse(ring):
    for u in units(ring):
        assert u * inverse(u) == ring.one
    with pytest.raises(RingError):
        inverse(ring.zero)


def test_teichmuller_sets():
    assert teichmuller_set(F8) == set(F8.elements())
    assert teichmuller_set(Z9) == {Z9(0), Z9(1), Z9(8)}
    assert teichmuller_set(Z4) == {Z4(0), Z4(1)}


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.name)
def test_teichmuller_digits_reconstruct(ring):
    T = teichmuller_set(ring)
    for a in ring.elements():
        digits = teichmuller_digits(a)
        assert all(d in T for d in digits)
        total = ring.zero
        for i, d in enumerate(digits):
            total = total + ring.element(ring.p**i) * d
        assert total == a


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.name)
def test_frobenius(ring):
    T = sorted(teichmuller_set(ring), key=lambda e: e.index)
    for a, b in itertools.product(T, repeat=2):
        assert frobenius(a * b) == frobenius(a) * frobenius(b)
    for a in ring.elements():
        x = a
        for _ in range(ring.r):
            x = frobenius(x)
        assert x == a


def test_trace_examples():
    assert trace(Z9(7)) == 7
    assert trace(F4.generator()) == 1
    assert trace(F27.one) == 0


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.name)
def test_trace_uniform_and_additive(ring):
    values = [trace(a) for a in ring.elements()]
    for v in range(ring.m):
        assert values.count(v) == ring.p ** ((ring.r - 1) * ring.s)
    for a, b in itertools.product(ring.elements(), repeat=2):
        assert trace(a + b) == (trace(a) + trace(b)) % ring.m


def test_tables_match_element_arithmetic():
    for ring in (Z9, F8, GR42):
        for a, b in itertools.product(ring.elements(), repeat=2):
            assert ring.add_table[a.index, b.index] == (a + b).index
            assert ring.mul_table[a.index, b.index] == (a * b).index


def test_inner_product():
    assert inner_product(Z9, [3, 2, 8], [1, 1, 1]) == 4


def test_json_roundtrip():
    for ring in SMALL:
        assert ring_from_json(ring_to_json(ring)) == ring


def test_bad_parameters():
    with pytest.raises(RingError):
        build_ring(4, 1, 1)
    with pytest.raises(RingError):
        build_ring(2, 2, 1, h=[1, 0, 1])  # x^2 + 1 = (x + 1)^2 mod 2
    with pytest.raises(RingError):
        build_ring(3, 2, 1)  # no built-in modulus
    with pytest.raises(RingError):
        Z9(1) + Z4(1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([Z9, F8, GR42, F27]), st.data())
def test_ring_axioms(ring, data):
    idx = st.integers(0, ring.size - 1)
    a, b, c = (ring.from_index(data.draw(idx)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == ring.zero
