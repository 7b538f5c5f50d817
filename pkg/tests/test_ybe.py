import itertools
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heapmod.errors import ContractViolation, PreconditionError
from heapmod.heaps import FiniteAbelianGroup
from heapmod.hmod import FiniteHeapOfModules, from_module
from heapmod.modules import FiniteTModule, regular_module
from heapmod.trusses import FiniteRing, endomorphism_truss, truss_from_ring
from heapmod.heaps import heap_from_group
from heapmod.ybe import (BinaryStructure, ExactSequence, YBEPairMap, affine_spindle, check_ybe,
                         classify_binary, entropic_pair_check, export_ybe_text, pair_map_from_spindle,
                         quandle_from_unit, spindle_from_hmodule, ybe_map)

from . import oracles

Z = FiniteAbelianGroup.cyclic
T2 = truss_from_ring(FiniteRing.zmod(2))
T3 = truss_from_ring(FiniteRing.zmod(3))
HM2 = from_module(regular_module(T2))
HM3 = from_module(regular_module(T3))
DIHEDRAL3 = [(2 * y - x) % 3 for x in range(3) for y in range(3)]


def test_left_projection_is_spindle_not_rack():
    f = classify_binary([x for x in range(2) for y in range(2)], 2).flags
    assert f == {"shelf": True, "spindle": True, "rack": False, "quandle": False, "entropic": True}


def test_dihedral_is_entropic_quandle():
    B = classify_binary(DIHEDRAL3, 3)
    assert B.flags["quandle"] and B.flags["entropic"]
    O, D = B.o2, B.division
    for x, y in itertools.product(range(3), repeat=2):
        assert O[x, D[x, y]] == y


def test_right_projection_is_quandle():
    B = classify_binary([y for x in range(2) for y in range(2)], 2)
    assert B.flags["quandle"] and B.flags["entropic"]
    assert (B.division == np.arange(2)[None, :]).all()


def test_non_shelf_witness():
    B = classify_binary([(x + y) % 2 for x in range(2) for y in range(2)], 2)
    assert not B.flags["shelf"]
    assert B.classification.check("left self-distributivity").witness is not None


def test_spindles_from_regular_z2():
    assert (spindle_from_hmodule(HM2, 1).o2 == np.arange(2)[None, :]).all()
    assert (spindle_from_hmodule(HM2, 0).o2 == np.arange(2)[:, None]).all()


def test_spindle_over_z3_is_dihedral():
    assert spindle_from_hmodule(HM3, 2).op.tolist() == DIHEDRAL3


def test_ybe_examples():
    swap = ybe_map(HM2, 1)
    assert swap.r3.tolist() == [[[0, 0], [1, 0]], [[0, 1], [1, 1]]]
    assert check_ybe(swap).holds
    proj = ybe_map(HM2, 0)
    assert all(tuple(proj.r3[m, n]) == (m, m) for m in range(2) for n in range(2))
    assert check_ybe(proj).holds
    assert check_ybe(ybe_map(HM3, 2)).holds


def test_check_ybe_matches_oracle():
    for n in (2, 3):
        for vals in itertools.islice(itertools.product(range(n), repeat=n * n), 0, None, 7 if n == 3 else 1):
            rm = pair_map_from_spindle(BinaryStructure(n, vals))
            r = {(x, y): (int(rm.r3[x, y, 0]), int(rm.r3[x, y, 1])) for x in range(n) for y in range(n)}
            assert check_ybe(rm).holds == oracles.ybe_holds(n, r)


def test_check_ybe_reports_witness():
    rm = YBEPairMap(2, [v for x in range(2) for y in range(2) for v in ((x + y) % 2, x)])
    v = check_ybe(rm)
    assert not v.holds and v.witness == (1, 0, 0)


def test_quandle_from_unit():
    q = quandle_from_unit(HM3, 2, 2)
    assert q.spindle.flags["quandle"]
    assert q.r.nondegenerate
    s = quandle_from_unit(HM2, 1, 1)
    assert s.inverse == s.r


def test_quandle_without_inverse_rejected():
    with pytest.raises(PreconditionError):
        quandle_from_unit(HM2, 0, 0)
    with pytest.raises(PreconditionError):
        quandle_from_unit(HM2, 0, 1)


def test_entropic_pairs():
    for u, v in itertools.product(range(3), repeat=2):
        assert entropic_pair_check(HM3, u, v).status == "holds"


def test_entropic_pair_mutation():
    lam = HM3.lam.copy()
    lam[2 * 9 + 0 * 3 + 1] = 0
    bad = FiniteHeapOfModules(T3, HM3.heap, lam)
    assert entropic_pair_check(bad, 2, 2).status == "contract-violation"


def test_affine_spindles():
    G = Z(3)
    assert affine_spindle(G, [0, 2, 1]).op.tolist() == DIHEDRAL3
    assert (affine_spindle(G, [0, 0, 0]).o2 == np.arange(3)[:, None]).all()
    assert (affine_spindle(G, [0, 1, 2]).o2 == np.arange(3)[None, :]).all()
    with pytest.raises(PreconditionError):
        affine_spindle(G, [0, 1, 1])


def test_affine_spindle_equals_endomorphism_spindle():
    H = heap_from_group(Z(4))
    E = endomorphism_truss(H)
    hm = from_module(FiniteTModule(E.truss, H, E.maps))
    for i, f in enumerate(E.maps):
        if f[0] == 0:
            assert affine_spindle(Z(4), f) == spindle_from_hmodule(hm, i)


def test_export_text():
    text = export_ybe_text(ybe_map(HM2, 1))
    assert text.splitlines()[0] == "order 2 nondegenerate true"
    assert "1 0 -> 0 1" in text


def test_ybe_sweep_on_sixteen_points_is_fast():
    G = FiniteAbelianGroup.from_decomposition((2, 2, 2, 2))
    ring = FiniteRing.zmod(2)
    for _ in range(3):
        ring = ring.product(FiniteRing.zmod(2))
    hm = from_module(regular_module(truss_from_ring(ring)))
    assert hm.order == 16 and G.order == 16
    start = time.perf_counter()
    v = check_ybe(ybe_map(hm, 5))
    assert v.holds
    assert time.perf_counter() - start < 5


def test_splitting_galleries():
    V = Z(2).product(Z(2))
    g = ExactSequence(2, Z(2), V, Z(2), (0, 2), (0, 1, 0, 1)).splittings()
    assert len(g.maps) == 2 and g.hmodule.report.valid
    assert sorted(g.maps) == [(0, 1), (0, 3)]
    g = ExactSequence(2, Z(2), Z(4), Z(2), (0, 2), (0, 1, 0, 1)).splittings()
    assert g.maps == () and g.hmodule is None and g.reason
    g = ExactSequence(2, Z(1), Z(2), Z(2), (0,), (0, 1)).splittings()
    assert len(g.maps) == 1


def test_retraction_galleries():
    V = Z(2).product(Z(2))
    g = ExactSequence(2, Z(2), V, Z(2), (0, 2), (0, 1, 0, 1)).retractions()
    assert len(g.maps) == 2 and g.hmodule.report.valid
    assert ExactSequence(2, Z(2), Z(4), Z(2), (0, 2), (0, 1, 0, 1)).retractions().maps == ()
    ident = ExactSequence(2, Z(2), Z(2), Z(1), (0, 1), (0, 0)).retractions()
    assert ident.maps == ((0, 1),)


def test_gallery_quandle_for_unit():
    V = Z(2).product(Z(2))
    hm = ExactSequence(2, Z(2), V, Z(2), (0, 2), (0, 1, 0, 1)).splittings().hmodule
    assert spindle_from_hmodule(hm, 1).flags["quandle"]


def test_non_exact_sequence_gives_reason():
    g = ExactSequence(2, Z(2), Z(2), Z(2), (0, 1), (0, 1)).splittings()
    assert g.maps == () and "exact" in g.reason


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_every_u_gives_solution(n, data):
    hm = from_module(regular_module(truss_from_ring(FiniteRing.zmod(n))))
    u = data.draw(st.integers(0, n - 1))
    B = spindle_from_hmodule(hm, u)
    assert B.flags["spindle"] and B.flags["entropic"]
    assert check_ybe(ybe_map(hm, u)).holds


def test_contract_violation_on_bad_spindle():
    lam = HM3.lam.copy()
    lam[2 * 9 + 0 * 3 + 0] = 1
    with pytest.raises(ContractViolation):
        spindle_from_hmodule(FiniteHeapOfModules(T3, HM3.heap, lam), 2)
