import numpy as np
import pytest
from hypothesis import given, strategies as st

from heapmod.affine import (AffineMorphismPair, FiniteTAffineSpace, affine_Rmodule_axioms, compose_pairs,
                            empty_affine, equivalence_roundtrip, phi, psi, trans_tgroup, trivial_group,
                            validate_affine, validate_affine_morphism)
from heapmod.errors import PreconditionError
from heapmod.heaps import FiniteAbelianGroup, FiniteHeap, heap_from_group, translation_group
from heapmod.hmod import FiniteHeapOfModules, classify, from_module, trivial_hmodule
from heapmod.modules import FiniteTGroup, module_to_tgroup, regular_module
from heapmod.trusses import FiniteRing, star_truss, truss_from_ring

Z = FiniteAbelianGroup.cyclic
T2 = truss_from_ring(FiniteRing.zmod(2))
T3 = truss_from_ring(FiniteRing.zmod(3))
STAR = star_truss()


def torsor(n):
    """Z/n acting on n points by translation, over the one-point truss."""
    G = FiniteTGroup(Z(n), STAR, np.arange(n))
    a = np.arange(n)
    return FiniteTAffineSpace(n, G, (a[:, None] + a[None, :]) % n)


def vector_space(p):
    T = truss_from_ring(FiniteRing.zmod(p))
    G = module_to_tgroup(regular_module(T), 0)
    a = np.arange(p)
    return FiniteTAffineSpace(p, G, (a[:, None] + a[None, :]) % p)


def test_torsor_valid():
    assert torsor(2).report.valid


def test_empty_affine_space_valid():
    A = empty_affine(T2)
    assert A.report.valid
    assert phi(A).order == 0


def test_trivial_action_invalid():
    G = FiniteTGroup(Z(2), STAR, [0, 1])
    r = validate_affine(2, G, [0, 1, 0, 1])
    assert not r.valid
    names = {c.name for c in r.failures}
    assert {"shear", "injectivity"} <= names


def test_phi_of_torsor():
    hm = phi(torsor(2))
    assert hm.report.valid
    assert (hm.L3[0] == np.arange(2)[None, :]).all()


def test_phi_of_vector_space():
    hm = phi(vector_space(3))
    a = np.arange(3)
    assert (hm.heap.t3 == (a[:, None, None] - a[None, :, None] + a[None, None, :]) % 3).all()
    for t in range(3):
        assert (hm.L3[t] == (t * (a[None, :] - a[:, None]) + a[:, None]) % 3).all()


def test_trans_tgroup_examples():
    hm = from_module(regular_module(T2))
    tt = trans_tgroup(hm)
    G = tt.tgroup
    P = tt.pair_index
    tau01, ident = P[0, 1], P[0, 0]
    assert G.a2[0, tau01] == ident and G.a2[1, tau01] == tau01
    pt = from_module(regular_module(truss_from_ring(FiniteRing.zmod(1))))
    assert trans_tgroup(pt).tgroup.order == 1
    third = trivial_hmodule(T3, heap_from_group(Z(3)), "third")
    G3 = trans_tgroup(third).tgroup
    assert (G3.a2 == np.arange(3)[None, :]).all()
    with pytest.raises(PreconditionError):
        trans_tgroup(FiniteHeapOfModules(T2, FiniteHeap(0, []), []))


def test_psi_examples():
    A = psi(trivial_hmodule(STAR, heap_from_group(Z(3)), "third"))
    assert A.carrier == 3 and A.group.order == 3 and A.report.valid
    B = psi(from_module(regular_module(T2)))
    assert B.carrier == 2 and B.group.order == 2
    assert psi(FiniteHeapOfModules(T2, FiniteHeap(0, []), [])).carrier == 0


def test_roundtrips_on_examples():
    for hm in (from_module(regular_module(T2)), trivial_hmodule(T3, heap_from_group(Z(4)), "first")):
        assert phi(psi(hm)) == hm
        assert equivalence_roundtrip(hm).exact
    v = equivalence_roundtrip(torsor(3))
    assert sorted(v.epsilon) == [0, 1, 2]
    assert equivalence_roundtrip(empty_affine(T2)).exact


def test_epsilon_on_torsor_is_explicit():
    A = torsor(4)
    eps = equivalence_roundtrip(A).epsilon
    tt = trans_tgroup(phi(A))
    for a in range(4):
        for b in range(4):
            assert eps[tt.pair_index[a, b]] == (b - a) % 4


def test_affine_morphisms():
    A = torsor(3)
    ident = AffineMorphismPair((0, 1, 2), (0, 1, 2))
    assert validate_affine_morphism(ident, A, A) == (True, None)
    const = AffineMorphismPair((1, 1, 1), (0, 0, 0))
    assert validate_affine_morphism(const, A, A)[0]
    ok, w = validate_affine_morphism(AffineMorphismPair((0, 1, 2), (0, 0, 0)), A, A)
    assert not ok and w[0] == "equivariance"


@given(st.integers(0, 2), st.integers(0, 2))
def test_composition_of_translations(s, t):
    A = torsor(3)
    f = AffineMorphismPair(tuple((x + s) % 3 for x in range(3)), (0, 1, 2))
    g = AffineMorphismPair(tuple((x + t) % 3 for x in range(3)), (0, 1, 2))
    assert validate_affine_morphism(compose_pairs(g, f), A, A)[0]


def test_affine_module_axioms():
    R = FiniteRing.zmod(2)
    hm = from_module(regular_module(T2))
    r = affine_Rmodule_axioms(R, 2, hm.heap.ternary, hm.lam)
    assert r.valid
    assert affine_Rmodule_axioms(R, 0, [], []).valid
    third = trivial_hmodule(T2, heap_from_group(Z(2)), "third")
    r = affine_Rmodule_axioms(R, 2, third.heap.ternary, third.lam)
    assert not r.valid and r.check("V4").passed
    assert any(c.witness is not None for c in r.failures)


def test_translation_group_of_psi_matches():
    hm = from_module(regular_module(T3))
    assert psi(hm).group.order == translation_group(hm.heap).group.order


def test_isotropy_preserved_over_star():
    hm = trivial_hmodule(STAR, heap_from_group(Z(2).product(Z(2))), "third")
    assert classify(hm).isotropic
    A = psi(hm)
    assert (A.group.a2 == np.arange(4)[None, :]).all()
    assert classify(phi(A)).isotropic


def test_trivial_group_helper():
    assert trivial_group().order == 1
