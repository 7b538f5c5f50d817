import itertools

import pytest
from hypothesis import given, strategies as st

from heapmod.errors import StructuralError
from heapmod.heaps import FiniteAbelianGroup, heap_from_group
from heapmod.hmod import from_module
from heapmod.iso import are_isomorphic, automorphisms, canonical_form, find_isomorphisms, relabel
from heapmod.modules import induced_action, regular_module
from heapmod.trusses import FiniteRing, FiniteTruss, shift_truss, truss_from_ring
from heapmod.ybe import classify_binary, ybe_map

Z = FiniteAbelianGroup.cyclic
T3 = truss_from_ring(FiniteRing.zmod(3))
T4 = truss_from_ring(FiniteRing.zmod(4))


def _objects():
    V = Z(2).product(Z(2))
    return [
        Z(4), V, heap_from_group(Z(5)), T4, shift_truss(3),
        FiniteTruss(heap_from_group(Z(3)), [a for a in range(3) for b in range(3)]),
        regular_module(T4), induced_action(regular_module(T3), 1),
        from_module(regular_module(T4)),
        classify_binary([(2 * y - x) % 3 for x in range(3) for y in range(3)], 3),
        ybe_map(from_module(regular_module(T3)), 2),
    ]


def _order(obj):
    return obj.order


@pytest.mark.parametrize("obj", _objects(), ids=lambda o: type(o).__name__)
def test_relabel_gives_isomorphic_and_same_canonical_form(obj):
    n = _order(obj)
    cf = canonical_form(obj)
    for perm in itertools.islice(itertools.permutations(range(n)), 0, None, 5):
        other = relabel(obj, perm)
        ok, sigma = are_isomorphic(obj, other)
        assert ok
        assert relabel(obj, sigma) == other
        assert canonical_form(other).key == cf.key


def test_relabel_by_canonical_relabeling_is_canonical():
    for obj in _objects():
        cf = canonical_form(obj)
        assert canonical_form(relabel(obj, cf.relabeling)).key == cf.key


def test_non_isomorphic_groups():
    assert not are_isomorphic(Z(4), Z(2).product(Z(2)))[0]
    assert canonical_form(Z(4)).key != canonical_form(Z(2).product(Z(2))).key


def test_different_types_rejected():
    with pytest.raises(StructuralError):
        are_isomorphic(Z(2), heap_from_group(Z(2)))


def test_automorphism_counts():
    # |Aut(Z/n)| = phi(n) for groups, |Hol(Z/n)| = n phi(n) for heaps
    assert len(automorphisms(Z(5))) == 4
    assert len(automorphisms(Z(2).product(Z(2)))) == 6
    assert len(automorphisms(heap_from_group(Z(4)))) == 8
    assert len(automorphisms(T4)) == 1


def test_find_all_isomorphisms_brute_force():
    H = heap_from_group(Z(4))
    brute = [list(p) for p in itertools.permutations(range(4))
             if relabel(H, p) == H]
    assert sorted(find_isomorphisms(H, H, limit=None)) == sorted(brute)


def test_truss_automorphism_mode():
    M = regular_module(T3)
    ok, w = are_isomorphic(M, M, truss_automorphisms=True)
    assert ok and len(w) == 2


@given(st.permutations(list(range(6))))
def test_relabel_property_on_heap_of_order_6(perm):
    H = heap_from_group(Z(6))
    K = relabel(H, perm)
    assert K.report.valid
    assert canonical_form(K).key == canonical_form(H).key


@given(st.permutations(list(range(4))))
def test_relabel_property_on_hmodule(perm):
    hm = from_module(regular_module(T4))
    other = relabel(hm, perm)
    assert other.report.valid
    assert are_isomorphic(hm, other)[0]


def test_left_and_right_projection_trusses_not_isomorphic():
    H = heap_from_group(Z(2))
    left = FiniteTruss(H, [a for a in range(2) for b in range(2)])
    right = FiniteTruss(H, [b for a in range(2) for b in range(2)])
    assert not are_isomorphic(left, right)[0]
    assert are_isomorphic(left, relabel(left, [1, 0]))[0]
