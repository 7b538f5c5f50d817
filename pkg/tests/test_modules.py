import numpy as np
import pytest
from hypothesis import given, strategies as st

from heapmod.errors import HeapModError, PreconditionError
from heapmod.heaps import FiniteAbelianGroup, FiniteHeap, heap_from_group
from heapmod.modules import (FiniteTGroup, FiniteTModule, absorbers, annihilator, coset_induced_submodule_test,
                             induced_action, module_morphisms, module_to_tgroup, regular_module, stabilizer,
                             tgroup_module_roundtrip, tgroup_to_module, validate_module, validate_tgroup)
from heapmod.trusses import FiniteRing, endomorphism_truss, shift_truss, star_truss, truss_from_ring

Z = FiniteAbelianGroup.cyclic
T2 = truss_from_ring(FiniteRing.zmod(2))
T3 = truss_from_ring(FiniteRing.zmod(3))
T4 = truss_from_ring(FiniteRing.zmod(4))
POINT = FiniteHeap(1, [0])


def test_regular_module_valid_and_unital():
    r = validate_module(T2, T2.heap, T2.mul)
    assert r.valid and r.info["unital"]


def test_point_module_over_any_truss():
    for T in (T2, T4, shift_truss(3)):
        assert validate_module(T, POINT, [0] * T.order).valid


def test_action_by_truss_element_fails():
    r = validate_module(T2, heap_from_group(Z(2)), [0, 0, 1, 1])
    assert not r.valid
    assert not r.check("associativity").passed
    assert r.check("associativity").witness == (1, 0, 0)


def test_induced_at_absorber_is_unchanged():
    M = regular_module(T4)
    assert induced_action(M, 0) == M


def test_stabilizers():
    assert stabilizer(regular_module(T2)) == (1,)
    assert stabilizer(regular_module(shift_truss(3))) == (0,)
    assert stabilizer(FiniteTModule(T4, POINT, [0] * 4)) == (0, 1, 2, 3)


def test_strictness_example():
    M = regular_module(shift_truss(3))
    for e in range(3):
        assert stabilizer(induced_action(M, e)) == (0, 1, 2)


def test_annihilators():
    M = regular_module(T2)
    assert annihilator(M, 0) == (0,)
    assert annihilator(M, 1) == ()
    assert annihilator(FiniteTModule(T2, POINT, [0, 0]), 0) == (0, 1)


def test_annihilator_of_empty_module_rejected():
    with pytest.raises(PreconditionError):
        annihilator(FiniteTModule(T2, FiniteHeap(0, []), []), 0)


def test_absorbers():
    assert absorbers(regular_module(T2)) == (0,)
    M = regular_module(T3)
    for e in range(3):
        assert e in absorbers(induced_action(M, e))
    assert absorbers(regular_module(shift_truss(3))) == ()


def test_tgroups():
    assert validate_tgroup(Z(2), T2, T2.mul).valid
    G = Z(2).product(Z(2))
    assert validate_tgroup(G, star_truss(), [0, 1, 2, 3]).valid
    bad = validate_tgroup(Z(2), T2, [0, 0, 1, 1])
    assert not bad.valid and not bad.check("additivity").passed


def test_tgroup_module_roundtrips():
    G = FiniteTGroup(Z(2), T2, T2.mul)
    M, z = tgroup_module_roundtrip(G)
    assert z == 0 and M == regular_module(T2)
    pt = FiniteTModule(T2, POINT, [0, 0])
    assert tgroup_module_roundtrip(pt).group.order == 1
    induced = induced_action(regular_module(T3), 2)
    Gi = tgroup_module_roundtrip(induced, 2)
    assert Gi.group.zero == 2
    with pytest.raises(PreconditionError):
        tgroup_module_roundtrip(regular_module(shift_truss(3)))


def test_module_to_tgroup_rejects_non_absorber():
    with pytest.raises(PreconditionError):
        module_to_tgroup(regular_module(T2), 1)


def test_coset_induced_submodule_examples():
    G = module_to_tgroup(regular_module(T4), 0)
    assert coset_induced_submodule_test(G, [1, 3])
    assert not coset_induced_submodule_test(G, [0, 1])
    assert coset_induced_submodule_test(G, [2])


def test_module_morphisms_oracle():
    M, N = regular_module(T3), induced_action(regular_module(T3), 1)
    import itertools
    A, B = M.a2, N.a2
    H, H2 = M.heap.t3, N.heap.t3
    brute = [f for f in itertools.product(range(3), repeat=3)
             if all(f[H[a, b, c]] == H2[f[a], f[b], f[c]] for a, b, c in itertools.product(range(3), repeat=3))
             and all(f[A[t, m]] == B[t, f[m]] for t in range(3) for m in range(3))]
    assert module_morphisms(M, N) == brute


def test_evaluation_module_of_endomorphisms():
    H = heap_from_group(Z(3))
    E = endomorphism_truss(H)
    assert validate_module(E.truss, H, E.maps).valid


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_induction_stabilises(n, data):
    M = regular_module(truss_from_ring(FiniteRing.zmod(n)))
    e, f = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert induced_action(induced_action(M, f), e) == induced_action(M, e)
    assert induced_action(M, e).report.valid


@given(st.sampled_from([2, 3, 4]), st.data())
def test_tgroup_module_roundtrip_property(n, data):
    T = truss_from_ring(FiniteRing.zmod(n))
    e = data.draw(st.integers(0, n - 1))
    M = induced_action(regular_module(T), e)
    G = module_to_tgroup(M, e)
    assert tgroup_to_module(G) == (M, e)


def test_stabilizer_of_empty_module_is_everything():
    assert stabilizer(FiniteTModule(T2, FiniteHeap(0, []), np.zeros(0, dtype=np.int64))) == (0, 1)


def test_bad_action_length_is_structural():
    with pytest.raises(HeapModError):
        FiniteTModule(T2, POINT, [0, 0, 0])
