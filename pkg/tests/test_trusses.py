import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heapmod.errors import HeapModError, StructuralError
from heapmod.heaps import FiniteAbelianGroup, FiniteHeap, heap_from_group
from heapmod.iso import are_isomorphic
from heapmod.trusses import (FiniteRing, FiniteTruss, endomorphism_truss, is_ideal, is_paragon, is_subtruss,
                             quotient_by_paragon, ring_from_truss, shift_truss, star_truss, truss_from_ring,
                             truss_morphisms, validate_truss)

from . import oracles

Z = FiniteAbelianGroup.cyclic
T2 = truss_from_ring(FiniteRing.zmod(2))
T4 = truss_from_ring(FiniteRing.zmod(4))


def test_ring_truss_z2():
    assert T2.report.valid
    assert T2.unit == 1 and T2.absorber == 0
    assert T2.m2.tolist() == [[0, 0], [0, 1]]


def test_ring_truss_z4_and_zero_ring():
    assert T4.order == 4 and T4.absorber == 0 and T4.unit == 1
    Tz = truss_from_ring(FiniteRing.zero_ring(Z(2)))
    assert Tz.report.valid and Tz.absorber == 0 and Tz.unit is None
    assert (Tz.m2 == 0).all()


def test_conjugated_product_has_absorber_away_from_zero():
    # m·n = 2mn + m + n on Z/3: a truss whose absorber is 1, not 0
    T = FiniteTruss(heap_from_group(Z(3)), [(2 * m * n + m + n) % 3 for m in range(3) for n in range(3)])
    assert T.report.valid
    assert T.times(0, 0) == 0 and T.times(0, 1) == 1
    assert T.absorber == 1


def test_left_projection_is_a_truss():
    for G in (Z(2), Z(3), Z(2).product(Z(2))):
        n = G.order
        assert validate_truss(heap_from_group(G), [a for a in range(n) for _ in range(n)]).valid


def test_nonassociative_table_rejected_with_witness():
    r = validate_truss(heap_from_group(Z(2)), [1, 0, 1, 0])
    c = r.check("associativity")
    assert not c.passed and c.witness == (0, 0, 0)


def test_wrong_length_is_structural():
    with pytest.raises(StructuralError):
        FiniteTruss(heap_from_group(Z(2)), [0, 0, 0])


def test_order_two_trusses_are_the_associative_tables():
    H = heap_from_group(Z(2))
    assoc = [t for t in itertools.product(range(2), repeat=4)
             if all(t[2 * t[2 * a + b] + c] == t[2 * a + t[2 * b + c]] for a, b, c in itertools.product(range(2), repeat=3))]
    assert len(assoc) == 8
    for t in itertools.product(range(2), repeat=4):
        assert validate_truss(H, t).valid == (t in assoc)


def test_truss_oracle_agrees_order_three():
    H = heap_from_group(Z(3))
    ours = [t for t in itertools.product(range(3), repeat=9) if validate_truss(H, t).valid]
    assert ours == oracles.truss_tables(3, oracles.zmod_heap(3))


@pytest.mark.parametrize("G,size", [(Z(1), 1), (Z(2), 4), (Z(3), 9)])
def test_endomorphism_truss_orders(G, size):
    E = endomorphism_truss(heap_from_group(G))
    assert E.truss.order == size and E.truss.report.valid
    assert E.truss.unit is not None


def test_endomorphisms_of_z3_are_affine_maps():
    E = endomorphism_truss(heap_from_group(Z(3)))
    affine = sorted(tuple((a * x + b) % 3 for x in range(3)) for a in range(3) for b in range(3))
    assert sorted(map(tuple, E.maps.tolist())) == affine


def test_paragon_examples():
    assert is_paragon(T2, [0])[0]
    assert is_paragon(T2, [1])[0]
    assert not is_paragon(T2, [])[0]


def test_ideal_examples():
    assert is_ideal(T4, [0, 2], "two-sided")
    assert not is_ideal(T2, [1], "left")
    assert is_ideal(T2, [0, 1], "two-sided")


def test_quotients():
    Q, q = quotient_by_paragon(T4, [0, 2])
    assert are_isomorphic(Q, T2)[0]
    assert quotient_by_paragon(T4, [0, 1, 2, 3])[0] == star_truss()
    Qd, _ = quotient_by_paragon(T2, [1])
    assert Qd.order == 2
    with pytest.raises(HeapModError):
        quotient_by_paragon(T4, [0, 1])


def test_shift_truss():
    T = shift_truss(3)
    assert T.report.valid and T.absorber is None
    assert T.times(1, 2) == 0


def test_ring_from_truss_roundtrip():
    for R in (FiniteRing.zmod(4), FiniteRing.zmod(2).product(FiniteRing.zmod(3))):
        assert ring_from_truss(truss_from_ring(R)) == R
    with pytest.raises(HeapModError):
        ring_from_truss(shift_truss(3))


def test_subtruss():
    assert is_subtruss(T4, [0, 2])
    assert is_subtruss(T4, [])
    assert not is_subtruss(T4, [1, 2])


def test_preimages_under_truss_morphisms_are_paragons():
    for T, S in itertools.product([T2, T4, shift_truss(3)], repeat=2):
        for f in truss_morphisms(T, S):
            for v in set(f):
                assert is_paragon(T, [x for x in range(T.order) if f[x] == v])[0]


@given(st.integers(1, 7), st.data())
def test_zmod_distributes(n, data):
    T = truss_from_ring(FiniteRing.zmod(n))
    a, b, c, d = (data.draw(st.integers(0, n - 1)) for _ in range(4))
    assert T.times(a, T.bracket(b, c, d)) == T.bracket(T.times(a, b), T.times(a, c), T.times(a, d))


@given(st.sampled_from([2, 3, 4]), st.data())
def test_paragon_quotient_is_truss(n, data):
    T = truss_from_ring(FiniteRing.zmod(n))
    P = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    if is_paragon(T, P)[0]:
        Q, q = quotient_by_paragon(T, P)
        assert Q.report.valid
        assert tuple(P) in q.classes


def test_endomorphism_truss_of_singleton():
    E = endomorphism_truss(FiniteHeap(1, [0]))
    assert E.truss.order == 1
    assert np.array_equal(E.maps, [[0]])
