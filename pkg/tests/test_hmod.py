import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heapmod.errors import ContractViolation, PreconditionError
from heapmod.heaps import FiniteAbelianGroup, FiniteHeap, heap_from_group
from heapmod.hmod import (FiniteHeapOfModules, annihilator_hm, baer_kaplansky_check, classify,
                          congruence_classes, cross_product, cross_product_lemmas, derivations,
                          derived_identities, endo_truss_ET, entropy_check, from_module, hmodule_morphisms,
                          ring_affine_classify, stabilizer_hm, to_module, trivial_hmodule, validate_hmodule)
from heapmod.iso import are_isomorphic
from heapmod.modules import (FiniteTGroup, FiniteTModule, induced_action, module_morphisms, regular_module)
from heapmod.trusses import FiniteRing, endomorphism_truss, shift_truss, star_truss, truss_from_ring

from . import oracles

Z = FiniteAbelianGroup.cyclic
T2 = truss_from_ring(FiniteRing.zmod(2))
T3 = truss_from_ring(FiniteRing.zmod(3))
T4 = truss_from_ring(FiniteRing.zmod(4))
HM2 = from_module(regular_module(T2))
POINT = FiniteHeap(1, [0])


def test_regular_hmodule_over_z2_is_the_affine_combination():
    lam = [(t * (n - m) + m) % 2 for t in range(2) for m in range(2) for n in range(2)]
    hm = FiniteHeapOfModules(T2, T2.heap, lam)
    assert hm.report.valid
    assert hm == HM2
    # Λ(0,m,n) = m and Λ(1,m,n) = n
    assert (HM2.L3[0] == np.arange(2)[:, None]).all()
    assert (HM2.L3[1] == np.arange(2)[None, :]).all()


@pytest.mark.parametrize("side", ["first", "third"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trivial_actions_valid(side, n):
    for T in (T2, star_truss(), shift_truss(3)):
        hm = trivial_hmodule(T, heap_from_group(Z(n)), side)
        assert hm.report.valid
        assert derived_identities(hm).valid


def test_parity_projection_fails_base_change_only():
    H4 = heap_from_group(Z(4))
    lam = [p if p % 2 == 0 else m for _ in range(4) for p in range(4) for m in range(4)]
    r = FiniteHeapOfModules(T4, H4, lam).report
    assert [c.name for c in r.failures] == ["base change"]
    assert r.failures[0].witness == (0, 0, 1, 1)
    assert "Λ(0,0,1) = 0" in r.failures[0].detail


def test_naive_oracle_over_small_trusses():
    # every lambda table over T(Z/2) and over the one-point truss, on Z/2, filtered by the axioms in pure Python
    for T in (T2, star_truss()):
        tmul = oracles.as_dict(T.m2.tolist())
        theap = oracles.as_dict(T.heap.t3.tolist())
        H = heap_from_group(Z(2))
        expected = oracles.hmodule_tables(T.order, tmul, theap, 2, oracles.as_dict(H.t3.tolist()))
        found = [tuple(lam) for lam in itertools.product(range(2), repeat=T.order * 4)
                 if validate_hmodule(T, H, lam).valid]
        assert sorted(found) == sorted(expected)


def test_derived_identities_and_mutations():
    for hm in (HM2, from_module(regular_module(T3)), trivial_hmodule(T2, heap_from_group(Z(3)), "third")):
        assert derived_identities(hm).valid
        n = hm.order
        for i in range(hm.lam.size):
            lam = hm.lam.copy()
            lam[i] = (lam[i] + 1) % n
            bad = FiniteHeapOfModules(hm.truss, hm.heap, lam)
            r = derived_identities(bad, strict=False)
            assert not r.valid, i


def test_from_module_examples():
    assert from_module(FiniteTModule(T2, POINT, [0, 0])).order == 1
    H = heap_from_group(Z(3))
    E = endomorphism_truss(H)
    hm = from_module(FiniteTModule(E.truss, H, E.maps))
    F = E.maps
    t3 = H.t3
    for f in range(E.truss.order):
        for a in range(3):
            for b in range(3):
                assert hm.apply(f, a, b) == t3[F[f, b], F[f, a], a]


def test_to_module_examples():
    assert to_module(HM2, 0) == regular_module(T2)
    assert to_module(HM2, 1) == induced_action(regular_module(T2), 1)
    triv = trivial_hmodule(T3, heap_from_group(Z(3)), "third")
    assert (to_module(triv, 1).a2 == np.arange(3)[None, :]).all()
    with pytest.raises(PreconditionError):
        to_module(FiniteHeapOfModules(T2, FiniteHeap(0, []), []), 0)


@given(st.sampled_from([2, 3, 4]), st.data())
def test_roundtrips(n, data):
    T = truss_from_ring(FiniteRing.zmod(n))
    M = regular_module(T)
    e = data.draw(st.integers(0, n - 1))
    hm = from_module(M)
    assert from_module(to_module(hm, e)) == hm
    assert to_module(hm, e) == induced_action(M, e)


def test_remark_two_modules_one_hmodule():
    T = shift_truss(3)
    M = regular_module(T)
    for e in range(3):
        Me = induced_action(M, e)
        assert from_module(Me) == from_module(M)
        assert module_morphisms(Me, M) == []


def test_stabilizer_annihilator_examples():
    c = classify(HM2)
    assert (c.stab, c.ann, c.isotropic, c.contractible) == ((1,), (0,), True, True)
    third = trivial_hmodule(T3, heap_from_group(Z(2)), "third")
    assert stabilizer_hm(third) == (0, 1, 2) and annihilator_hm(third) == ()
    first = trivial_hmodule(T3, heap_from_group(Z(2)), "first")
    assert annihilator_hm(first) == (0, 1, 2) and stabilizer_hm(first) == ()


def test_congruences():
    hm = from_module(regular_module(T4))
    q = congruence_classes(hm, [0, 2])
    assert q.quotient.order == 2 and q.quotient.report.valid
    assert sorted(map(sorted, q.classes)) == [[0, 2], [1, 3]]
    assert congruence_classes(hm, [0, 1, 2, 3]).quotient.order == 1
    assert congruence_classes(hm, [1]).quotient.order == 4


def test_congruence_needs_closed_subset():
    hm = from_module(regular_module(T4))
    with pytest.raises(Exception):
        congruence_classes(hm, [0, 1])


def test_cross_product_table():
    cp = cross_product(HM2, 0)
    assert cp.truss.report.valid and cp.truss.order == 4
    for i, j in itertools.product(range(4), repeat=2):
        (m, s), (n, t) = cp.pair(i), cp.pair(j)
        assert cp.pair(int(cp.truss.m2[i, j])) == ((m + s * n) % 2, s * t % 2)


def test_cross_product_of_point_is_truss():
    hm = from_module(FiniteTModule(T3, POINT, [0, 0, 0]))
    assert are_isomorphic(cross_product(hm, 0).truss, T3)


def test_cross_product_lemmas_pass():
    for hm in (HM2, from_module(regular_module(T3))):
        for e in range(hm.order):
            assert cross_product_lemmas(hm, e).valid


def test_cross_product_rejects_empty():
    with pytest.raises(PreconditionError):
        cross_product(FiniteHeapOfModules(T2, FiniteHeap(0, []), []), 0)


def test_endomorphisms_of_regular_z2():
    ends = sorted(f.values for f in hmodule_morphisms(HM2, HM2))
    assert ends == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_morphisms_to_and_from_point():
    pt = from_module(FiniteTModule(T3, POINT, [0, 0, 0]))
    M = from_module(regular_module(T3))
    assert len(hmodule_morphisms(pt, M)) == 3
    assert len(hmodule_morphisms(M, pt)) == 1


def test_endo_truss_orders():
    assert endo_truss_ET(FiniteTGroup(Z(2), T2, T2.mul)).truss.order == 4
    assert endo_truss_ET(FiniteTGroup(Z(3), T3, T3.mul)).truss.order == 9
    assert endo_truss_ET(FiniteTGroup(Z(1), T2, [0, 0])).truss.order == 1


def test_endo_truss_matches_cross_product():
    E = endo_truss_ET(FiniteTGroup(Z(3), T3, T3.mul))
    iso = np.array(E.iso)
    assert sorted(iso) == list(range(9))
    assert (iso[E.truss.m2] == E.cross.truss.m2[iso[:, None], iso[None, :]]).all()


def _ring_tgroup(G, ring):
    return FiniteTGroup(G, truss_from_ring(ring), ring.m2)


def test_baer_kaplansky_verdicts():
    z2 = _ring_tgroup(Z(2), FiniteRing.zmod(2))
    z3 = _ring_tgroup(Z(3), FiniteRing.zmod(3))
    v = baer_kaplansky_check(z2, z2)
    assert v.trusses_isomorphic and v.intertwined
    v = baer_kaplansky_check(z2, z3)
    assert not v.trusses_isomorphic and not v.intertwined
    z4 = _ring_tgroup(Z(4), FiniteRing.zmod(4))
    v22 = FiniteRing.product(FiniteRing.zmod(2), FiniteRing.zmod(2))
    k = _ring_tgroup(v22.group, v22)
    v = baer_kaplansky_check(z4, k)
    assert not v.trusses_isomorphic and not v.intertwined


def test_derivations():
    d = derivations(T2)
    assert d.maps.tolist() == [[0, 1]]
    H = heap_from_group(Z(3))
    from heapmod.trusses import FiniteTruss
    proj = FiniteTruss(H, [a for a in range(3) for b in range(3)])
    assert len(derivations(proj).maps) == len(endomorphism_truss(H).maps) == 9
    assert len(derivations(star_truss()).maps) == 1


def test_derivations_oracle():
    # Leibniz D(st) = [D(s)t, st, sD(t)] over all heap endomorphisms, brute force
    for T in (T3, shift_truss(3), T4):
        n, m, h = T.order, T.m2.tolist(), oracles.as_dict(T.heap.t3.tolist())
        ends = oracles.heap_morphisms(n, h, n, h)
        want = [D for D in ends
                if all(D[m[s][t]] == h[m[D[s]][t], m[s][t], m[s][D[t]]] for s in range(n) for t in range(n))]
        assert sorted(map(tuple, derivations(T).maps.tolist())) == sorted(want)


def test_entropy():
    hm = from_module(regular_module(T3))
    for t, t2 in itertools.product(range(3), repeat=2):
        assert entropy_check(hm, t, t2).status == "holds"
    from heapmod.trusses import FiniteTruss
    proj = FiniteTruss(heap_from_group(Z(3)), [a for a in range(3) for b in range(3)])
    hmP = from_module(regular_module(proj))
    for t in range(3):
        assert entropy_check(hmP, t, t).status == "holds"


def test_entropy_mutation_flags_violation():
    hm = from_module(regular_module(T3))
    lam = hm.lam.copy()
    lam[1 * 9 + 0 * 3 + 1] = 2
    bad = FiniteHeapOfModules(T3, hm.heap, lam)
    verdicts = {entropy_check(bad, t, t2).status for t in range(3) for t2 in range(3)}
    assert "contract-violation" in verdicts
    with pytest.raises(ContractViolation):
        for t, t2 in itertools.product(range(3), repeat=2):
            entropy_check(bad, t, t2, strict=True)


def test_ring_affine_classify():
    c = ring_affine_classify(from_module(regular_module(T3)))
    assert c.is_affine and c.module.order == 3
    assert not ring_affine_classify(trivial_hmodule(T2, heap_from_group(Z(2)), "third")).is_affine
    assert not ring_affine_classify(FiniteHeapOfModules(T2, FiniteHeap(0, []), [])).is_affine
