"""Modules over finite trusses and T-groups."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractViolation, PreconditionError, StructuralError
from .heaps import (FiniteAbelianGroup, FiniteHeap, as_budget, check_closed, heap_from_group,
                    heap_morphisms, retract)
from .report import Check, ValidationReport, law
from .tables import Frozen, as_index, as_mask, as_table
from .trusses import FiniteTruss, is_ideal, is_paragon, is_subtruss


def _sub_check(name, report):
    if report.valid:
        return Check(name, True)
    f = report.failures[0]
    return Check(name, False, f.witness, f"{f.name}: {f.detail}")


@dataclass(frozen=True, eq=False)
class FiniteTModule(Frozen):
    truss: FiniteTruss
    heap: FiniteHeap
    action: np.ndarray

    def __post_init__(self):
        k, n = self.truss.order, self.heap.order
        object.__setattr__(self, "action", as_table(self.action, k * n, max(n, 1), "action"))

    @property
    def order(self):
        return self.heap.order

    @property
    def a2(self):
        return self.action.reshape(self.truss.order, self.heap.order)

    def act(self, t, m):
        return int(self.action[t * self.heap.order + m])

    @cached_property
    def report(self):
        return validate_module(self.truss, self.heap, self.action)

    def require_valid(self):
        self.report.require()
        return self


def validate_module(T, M, action):
    mod = FiniteTModule(T, M, action)
    r = ValidationReport("module", info={"truss order": T.order, "order": M.order})
    r.checks.append(_sub_check("truss", T.report))
    r.checks.append(_sub_check("heap", M.report))
    A, H, TH, TM = mod.a2, M.t3, T.heap.t3, T.m2
    t = np.arange(T.order)
    m = np.arange(M.order)
    t3 = t[:, None, None, None], t[None, :, None, None], t[None, None, :, None]
    r.checks.append(law("associativity", A[TM[t[:, None, None], t[None, :, None]], m[None, None, :]],
                        A[t[:, None, None], A[t[None, :, None], m[None, None, :]]],
                        lambda w: f"({w[0]}*{w[1]})·{w[2]} = {A[TM[w[0], w[1]], w[2]]} but "
                                  f"{w[0]}·({w[1]}·{w[2]}) = {A[w[0], A[w[1], w[2]]]}"))
    mm = m[None, None, None, :]
    r.checks.append(law("truss bracket", A[TH[t3], mm], H[A[t3[0], mm], A[t3[1], mm], A[t3[2], mm]],
                        lambda w: f"[{w[0]},{w[1]},{w[2]}]·{w[3]} = {A[TH[w[0], w[1], w[2]], w[3]]} but "
                                  f"[{w[0]}·{w[3]},{w[1]}·{w[3]},{w[2]}·{w[3]}] = "
                                  f"{H[A[w[0], w[3]], A[w[1], w[3]], A[w[2], w[3]]]}"))
    tt = t[:, None, None, None]
    m3 = m[None, :, None, None], m[None, None, :, None], m[None, None, None, :]
    r.checks.append(law("heap bracket", A[tt, H[m3]], H[A[tt, m3[0]], A[tt, m3[1]], A[tt, m3[2]]],
                        lambda w: f"{w[0]}·[{w[1]},{w[2]},{w[3]}] = {A[w[0], H[w[1], w[2], w[3]]]} but "
                                  f"[{w[0]}·{w[1]},{w[0]}·{w[2]},{w[0]}·{w[3]}] = "
                                  f"{H[A[w[0], w[1]], A[w[0], w[2]], A[w[0], w[3]]]}"))
    unit = T.unit if T.report.valid else None
    r.info["unital"] = None if unit is None else bool((A[unit] == m).all())
    return r


def induced_action(M, e):
    e = as_index(e, M.order, "basepoint")
    A, H = M.a2, M.heap.t3
    out = FiniteTModule(M.truss, M.heap, H[A, A[:, e][:, None], e])
    return out


def stabilizer(M):
    """Truss elements acting as the identity; all of T on the empty carrier."""
    mask = (M.a2 == np.arange(M.order)[None, :]).all(axis=1)
    S = tuple(int(u) for u in np.flatnonzero(mask))
    if S:
        if not is_paragon(M.truss, S)[0] or not is_subtruss(M.truss, S):
            raise ContractViolation("stabilizer is not a paragon sub-truss", witness=S)
    return S


def annihilator(M, e):
    if M.order == 0:
        raise PreconditionError("annihilator of the empty module is not defined")
    e = as_index(e, M.order, "basepoint")
    mask = (M.a2 == e).all(axis=1)
    Z = tuple(int(z) for z in np.flatnonzero(mask))
    if Z:
        if not is_paragon(M.truss, Z)[0] or not is_ideal(M.truss, Z, "right"):
            raise ContractViolation("annihilator is not a paragon right ideal", witness=Z)
        if e in absorbers(M, check=False) and not is_ideal(M.truss, Z, "two-sided"):
            raise ContractViolation("annihilator at an absorber is not a two-sided ideal", witness=Z)
    return Z


def absorbers(M, check=True):
    A = M.a2
    E = tuple(int(e) for e in range(M.order) if (A[:, e] == e).all())
    if check:
        for e in range(M.order):
            if (e in E) != (induced_action(M, e) == M):
                raise ContractViolation("absorber iff induced action equals the action fails", witness=(e,))
    return E


def module_morphisms(M, N, budget=None):
    """Heap morphisms M -> N commuting with the action."""
    if M.truss != N.truss:
        raise StructuralError("modules over different trusses")
    out = []
    A, B = M.a2, N.a2
    for f in heap_morphisms(M.heap, N.heap, as_budget(budget)):
        fa = np.array(f, dtype=np.int64)
        if M.order == 0 or (fa[A] == B[:, fa]).all():
            out.append(f)
    return out


def regular_module(T):
    return FiniteTModule(T, T.heap, T.mul)


@dataclass(frozen=True, eq=False)
class FiniteTGroup(Frozen):
    group: FiniteAbelianGroup
    truss: FiniteTruss
    action: np.ndarray

    def __post_init__(self):
        k, n = self.truss.order, self.group.order
        object.__setattr__(self, "action", as_table(self.action, k * n, n, "action"))

    @property
    def order(self):
        return self.group.order

    @property
    def a2(self):
        return self.action.reshape(self.truss.order, self.group.order)

    @cached_property
    def report(self):
        return validate_tgroup(self.group, self.truss, self.action)

    def require_valid(self):
        self.report.require()
        return self


def validate_tgroup(G, T, action):
    tg = FiniteTGroup(G, T, action)
    r = ValidationReport("tgroup", info={"truss order": T.order, "order": G.order})
    r.checks.append(_sub_check("group", G.report))
    r.checks.append(_sub_check("truss", T.report))
    A, add, neg = tg.a2, G.table, G.neg
    TH, TM = T.heap.t3, T.m2
    t = np.arange(T.order)
    g = np.arange(G.order)
    t3 = t[:, None, None, None], t[None, :, None, None], t[None, None, :, None]
    gg = g[None, None, None, :]
    rhs = add[add[A[t3[0], gg], neg[A[t3[1], gg]]], A[t3[2], gg]]
    r.checks.append(law("truss bracket", A[TH[t3], gg], rhs,
                        lambda w: f"[{w[0]},{w[1]},{w[2]}]·{w[3]} = {A[TH[w[0], w[1], w[2]], w[3]]} but "
                                  f"{w[0]}·{w[3]} - {w[1]}·{w[3]} + {w[2]}·{w[3]} = {rhs[w]}"))
    tt = t[:, None, None]
    r.checks.append(law("additivity", A[tt, add[g[None, :, None], g[None, None, :]]],
                        add[A[tt, g[None, :, None]], A[tt, g[None, None, :]]],
                        lambda w: f"{w[0]}·({w[1]}+{w[2]}) = {A[w[0], add[w[1], w[2]]]} but "
                                  f"{w[0]}·{w[1]} + {w[0]}·{w[2]} = {add[A[w[0], w[1]], A[w[0], w[2]]]}"))
    r.checks.append(law("associativity", A[TM[t[:, None, None], t[None, :, None]], g[None, None, :]],
                        A[t[:, None, None], A[t[None, :, None], g[None, None, :]]]))
    r.checks.append(law("zero absorbed", A[:, G.zero], np.full(T.order, G.zero)))
    fixers = [int(u) for u in t if (A[u] == g).all()]
    r.info["isotropic"] = bool(fixers)
    return r


def tgroup_to_module(G):
    """T-group -> (module, absorber)."""
    G.require_valid()
    M = FiniteTModule(G.truss, heap_from_group(G.group), G.action)
    return M, G.group.zero


def module_to_tgroup(M, e):
    e = as_index(e, M.order, "absorber")
    if e not in absorbers(M, check=False):
        raise PreconditionError(f"{e} is not an absorber of the module", witness=(e,))
    return FiniteTGroup(retract(M.heap, e), M.truss, M.action)


def tgroup_module_roundtrip(x, e=None):
    """Convert once and check that converting back reproduces x exactly; returns the converted value."""
    if isinstance(x, FiniteTGroup):
        M, z = tgroup_to_module(x)
        back = module_to_tgroup(M, z)
        if back != x:
            raise ContractViolation("T-group -> module -> T-group is not the identity")
        return M, z
    if e is None:
        found = absorbers(x, check=False)
        if not found:
            raise PreconditionError("module has no absorber")
        e = found[0]
    G = module_to_tgroup(x, e)
    M, z = tgroup_to_module(G)
    if M != x or z != e:
        raise ContractViolation("module -> T-group -> module is not the identity")
    return G


def coset_induced_submodule_test(G, S):
    """G a T(R)-group (an R-module).  Compares 'S is a coset of a submodule' with
    'S is a non-empty sub-heap closed under every induced action at points of S'."""
    G.require_valid()
    n = G.order
    mask = as_mask(n, S)
    A, add, neg = G.a2, G.group.table, G.group.neg
    # coset side: some translate of S is a submodule
    coset = False
    for g in range(n):
        N = np.zeros(n, dtype=bool)
        N[add[np.flatnonzero(mask), neg[g]]] = True
        idx = np.flatnonzero(N)
        if (N[G.group.zero] and N[add[np.ix_(idx, idx)]].all() and N[neg[idx]].all()
                and N[A[:, idx]].all()):
            coset = True
            break
    # induced side
    H = heap_from_group(G.group)
    induced = bool(mask.any()) and check_closed(H, mask) is None
    if induced:
        T3 = H.t3
        for e in np.flatnonzero(mask):
            tri = T3[A[:, np.flatnonzero(mask)], A[:, e][:, None], e]
            if not mask[tri].all():
                induced = False
                break
    if coset != induced:
        raise ContractViolation("coset and induced-submodule characterizations disagree",
                                witness=tuple(int(i) for i in np.flatnonzero(mask)))
    return coset
