import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heapmod.errors import HeapModError, StructuralError
from heapmod.heaps import (FiniteAbelianGroup, FiniteHeap, coset_test, empty_heap, group_homomorphisms,
                           heap_from_group, heap_morphisms, is_heap_morphism, retract, subheap_relation,
                           trans_map, translation, translation_group, validate_heap)
from heapmod.enumeration import enumerate_abelian_groups

from . import oracles

Z = FiniteAbelianGroup.cyclic


def xor_heap():
    return FiniteHeap(2, [a ^ b ^ c for a in range(2) for b in range(2) for c in range(2)])


def test_xor_heap_valid():
    assert validate_heap(xor_heap().ternary, 2).valid


def test_first_projection_fails_malcev_at_0_1():
    r = validate_heap([a for a in range(2) for _ in range(4)], 2)
    assert not r.valid
    c = r.check("malcev")
    assert not c.passed and c.witness == (0, 1)


def test_empty_heap_valid():
    assert empty_heap().report.valid
    assert validate_heap([], 0).valid


@pytest.mark.parametrize("table,order", [([0, 1], 2), ([0] * 8 + [5], 2), ([0, 1, 2, 1, 0, 1, 0, 1], 2)])
def test_malformed_tables_are_structural(table, order):
    with pytest.raises(StructuralError):
        FiniteHeap(order, table)


def test_bracket_values():
    assert heap_from_group(Z(3)).bracket(1, 2, 0) == 2
    assert heap_from_group(Z(2)).bracket(1, 1, 1) == 1


def test_retract_of_z4_is_z4():
    assert retract(heap_from_group(Z(4)), 0) == Z(4)


def test_retract_at_one():
    G = retract(heap_from_group(Z(2)), 1)
    assert G.zero == 1
    assert G.table.tolist() == [[1, 0], [0, 1]]


def test_xor_retract_add():
    assert retract(xor_heap(), 0).plus(1, 1) == 0


def test_retract_of_empty_heap_rejected():
    with pytest.raises(HeapModError):
        retract(empty_heap(), 0)
    with pytest.raises(HeapModError):
        translation_group(empty_heap())


def test_translations():
    assert translation(heap_from_group(Z(3)), 0, 1).perm == (1, 2, 0)
    assert translation(heap_from_group(Z(2)), 0, 1).perm == (1, 0)
    H = heap_from_group(Z(2).product(Z(2)))
    for a in range(4):
        assert translation(H, a, a).perm == (0, 1, 2, 3)


@pytest.mark.parametrize("G,order", [(Z(1), 1), (Z(2), 2), (Z(3), 3), (Z(2).product(Z(2)), 4)])
def test_translation_group_order(G, order):
    H = heap_from_group(G)
    tg = translation_group(H)
    # oracle: distinct permutations x -> [x,a,b]
    perms = {tuple(H.bracket(x, a, b) for x in range(H.order)) for a in range(H.order) for b in range(H.order)}
    assert tg.group.order == len(perms) == order
    assert sorted(tg.perms) == sorted(perms)


def test_subheap_relation_z4():
    q = subheap_relation(heap_from_group(Z(4)), [0, 2])
    assert q.classes == ((0, 2), (1, 3))
    assert q.quotient.order == 2 and q.quotient.report.valid


def test_subheap_relation_extremes():
    H = heap_from_group(Z(3))
    assert subheap_relation(H, [0, 1, 2]).quotient.order == 1
    assert subheap_relation(H, [1]).classes == ((0,), (1,), (2,))


def test_subheap_relation_rejects_unclosed():
    with pytest.raises(HeapModError):
        subheap_relation(heap_from_group(Z(4)), [0, 1])
    with pytest.raises(HeapModError):
        subheap_relation(heap_from_group(Z(4)), [])


def test_is_heap_morphism_examples():
    H2, H4 = heap_from_group(Z(2)), heap_from_group(Z(4))
    assert is_heap_morphism((1, 1, 1, 1), H4, H2)[0]
    assert is_heap_morphism((1, 0), H2, H2)[0]
    # x -> x^2 on Z/4: oracle over all 64 triples
    f = (0, 1, 0, 1)
    expected = all(f[(a - b + c) % 4] == (f[a] - f[b] + f[c]) % 4
                   for a, b, c in itertools.product(range(4), repeat=3))
    good, witness = is_heap_morphism(f, H4, H4)
    assert good is expected is False
    a, b, c = witness
    assert f[(a - b + c) % 4] != (f[a] - f[b] + f[c]) % 4
    with pytest.raises(StructuralError):
        is_heap_morphism((0, 1), H4, H4)


def test_coset_examples():
    assert coset_test(Z(4), [1, 3])
    assert not coset_test(Z(4), [0, 1])
    assert coset_test(Z(4), [2])


@pytest.mark.parametrize("n", [0, 1, 2])
def test_heap_tables_match_group_count(n):
    # every abelian heap on 2 elements is a group heap: oracle count of labeled tables
    labeled = oracles.heap_tables(n)
    ours = {tuple(heap_from_group(G).ternary.tolist()) for G in _all_group_labelings(n)}
    if n == 0:
        ours = {()}
    assert {tuple(t[k] for k in sorted(t)) for t in labeled} == ours


def _all_group_labelings(n):
    out = []
    for G in enumerate_abelian_groups(n):
        for p in itertools.permutations(range(n)):
            p = np.array(p)
            q = np.argsort(p)
            out.append(FiniteAbelianGroup(n, p[G.table[np.ix_(q, q)]], int(p[G.zero]), p[G.neg[q]]))
    return out


def test_morphisms_match_oracle():
    for G, G2 in itertools.product([Z(2), Z(3), Z(4), Z(2).product(Z(2))], repeat=2):
        H, H2 = heap_from_group(G), heap_from_group(G2)
        h = {k: int(H.t3[k]) for k in itertools.product(range(H.order), repeat=3)}
        h2 = {k: int(H2.t3[k]) for k in itertools.product(range(H2.order), repeat=3)}
        assert heap_morphisms(H, H2) == oracles.heap_morphisms(H.order, h, H2.order, h2)
        assert group_homomorphisms(G, G2) == oracles.group_homs(G.order, G.table.tolist(), G2.order,
                                                                 G2.table.tolist())


def test_trans_map_is_additive():
    H, H2 = heap_from_group(Z(4)), heap_from_group(Z(2))
    for f in heap_morphisms(H, H2):
        img = trans_map(f, H, H2)
        assert len(img) == 4


groups = st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=2).map(
    lambda ds: FiniteAbelianGroup.from_decomposition(ds))


@given(groups, st.data())
def test_retract_roundtrip_property(G, data):
    H = heap_from_group(G)
    e = data.draw(st.integers(0, G.order - 1))
    assert heap_from_group(retract(H, e)) == H
    assert retract(H, G.zero) == G


@given(groups, st.data())
def test_heap_axioms_property(G, data):
    H = heap_from_group(G)
    a, b, c, d, e = (data.draw(st.integers(0, G.order - 1)) for _ in range(5))
    assert H.bracket(H.bracket(a, b, c), d, e) == H.bracket(a, b, H.bracket(c, d, e))
    assert H.bracket(a, b, b) == a == H.bracket(b, b, a)
    assert H.bracket(a, b, c) == H.bracket(c, b, a)


@given(groups, st.data())
def test_coset_iff_subheap_property(G, data):
    S = data.draw(st.sets(st.integers(0, G.order - 1), min_size=1))
    coset_test(G, sorted(S))          # raises if the two characterizations disagree
