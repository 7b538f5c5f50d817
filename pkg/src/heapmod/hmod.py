"""Heaps of modules: axioms, derived identities, the passage to and from modules, isotropy,
congruences, cross products, morphisms, endomorphism trusses and derivations."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractViolation, PreconditionError, StructuralError
from .heaps import (FiniteHeap, as_budget, check_closed, group_homomorphisms,
                    heap_from_group, heap_morphisms, retract, subheap_relation)
from .modules import (FiniteTGroup, FiniteTModule, annihilator, stabilizer, tgroup_to_module)
from .report import Check, ValidationReport, first_true, law
from .tables import Frozen, as_index, as_mask, as_table
from .trusses import (FiniteTruss, composition_table, function_space, is_ideal, is_paragon,
                      lookup_rows, quotient_by_paragon, is_subtruss)


@dataclass(frozen=True, eq=False)
class FiniteHeapOfModules(Frozen):
    truss: FiniteTruss
    heap: FiniteHeap
    lam: np.ndarray

    def __post_init__(self):
        k, n = self.truss.order, self.heap.order
        object.__setattr__(self, "lam", as_table(self.lam, k * n * n, max(n, 1), "lambda"))

    @property
    def order(self):
        return self.heap.order

    @property
    def L3(self):
        n = self.heap.order
        return self.lam.reshape(self.truss.order, n, n)

    def apply(self, t, m, n):
        N = self.heap.order
        return int(self.lam[(t * N + m) * N + n])

    @cached_property
    def report(self):
        return validate_hmodule(self.truss, self.heap, self.lam)

    def require_valid(self):
        self.report.require()
        return self


def _sub(name, rep):
    if rep.valid:
        return Check(name, True)
    f = rep.failures[0]
    return Check(name, False, f.witness, f"{f.name}: {f.detail}")


def _idx(k, n):
    return np.arange(k), np.arange(n)


def first_entry_law(L, TH, H):
    k = L.shape[0]
    t, _ = _idx(k, L.shape[1])
    a, b, c = t[:, None, None], t[None, :, None], t[None, None, :]
    lhs = L[TH[a, b, c]]                                   # (t,t',t'',m,n)
    rhs = H[L[a], L[b], L[c]]
    return law("first entry", lhs, rhs,
               lambda w: f"Λ([{w[0]},{w[1]},{w[2]}],{w[3]},{w[4]}) = {lhs[w]} but "
                         f"[Λ({w[0]},{w[3]},{w[4]}),Λ({w[1]},{w[3]},{w[4]}),Λ({w[2]},{w[3]},{w[4]})] = {rhs[w]}")


def third_entry_law(L, H):
    k, n = L.shape[0], L.shape[1]
    t, m = _idx(k, n)
    tt, mm = t[:, None, None, None, None], m[None, :, None, None, None]
    x, y, z = m[None, None, :, None, None], m[None, None, None, :, None], m[None, None, None, None, :]
    lhs = L[tt, mm, H[x, y, z]]
    rhs = H[L[tt, mm, x], L[tt, mm, y], L[tt, mm, z]]
    return law("third entry", lhs, rhs,
               lambda w: f"Λ({w[0]},{w[1]},[{w[2]},{w[3]},{w[4]}]) = {lhs[w]} but bracket of images = {rhs[w]}")


def associativity_law(L, TM):
    k, n = L.shape[0], L.shape[1]
    t, m = _idx(k, n)
    s4, t4 = t[:, None, None, None], t[None, :, None, None]
    m4, n4 = m[None, None, :, None], m[None, None, None, :]
    lhs = L[TM[s4, t4], m4, n4]
    rhs = L[s4, m4, L[t4, m4, n4]]
    return law("T-associativity", lhs, rhs,
               lambda w: f"Λ({w[0]}*{w[1]},{w[2]},{w[3]}) = {lhs[w]} but "
                         f"Λ({w[0]},{w[2]},Λ({w[1]},{w[2]},{w[3]})) = {rhs[w]}")


def base_change_values(L, H):
    """(lhs, rhs) indexed (t, m, n, e): Λ(t,m,n) and [Λ(t,e,n), Λ(t,e,m), m]."""
    k, n = L.shape[0], L.shape[1]
    t, m = _idx(k, n)
    t4, m4, n4, e4 = t[:, None, None, None], m[None, :, None, None], m[None, None, :, None], m[None, None, None, :]
    lhs = L[t4, m4, n4] + 0 * e4
    rhs = H[L[t4, e4, n4], L[t4, e4, m4], m4]
    return lhs, rhs


def base_change_law(L, H):
    lhs, rhs = base_change_values(L, H)
    return law("base change", lhs, rhs,
               lambda w: f"Λ({w[0]},{w[1]},{w[2]}) = {lhs[w]} but base-change RHS "
                         f"[Λ({w[0]},{w[3]},{w[2]}),Λ({w[0]},{w[3]},{w[1]}),{w[1]}] = {rhs[w]}")


def validate_hmodule(T, M, lam):
    hm = FiniteHeapOfModules(T, M, lam)
    r = ValidationReport("hmodule", info={"truss order": T.order, "order": M.order})
    r.checks.append(_sub("truss", T.report))
    r.checks.append(_sub("heap", M.report))
    L, H = hm.L3, M.t3
    r.checks.append(first_entry_law(L, T.heap.t3, H))
    r.checks.append(third_entry_law(L, H))
    r.checks.append(associativity_law(L, T.m2))
    r.checks.append(base_change_law(L, H))
    return r


def derived_identities(hm, strict=True):
    """Exhaustive check of the identities every heap of modules satisfies.  With strict=True
    a failure on a table that passes validation raises ContractViolation."""
    L, H = hm.L3, hm.heap.t3
    k, n = L.shape[0], L.shape[1]
    t, m = _idx(k, n)
    r = ValidationReport("derived identities")
    diag = L[:, m, m]
    r.checks.append(law("idempotency", diag, np.broadcast_to(m, diag.shape),
                        lambda w: f"Λ({w[0]},{w[1]},{w[1]}) = {diag[w]}"))
    t3, a3, b3 = t[:, None, None], m[None, :, None], m[None, None, :]
    inter = H[b3, L[t3, b3, a3], a3]
    r.checks.append(law("interchange", L, inter,
                        lambda w: f"Λ({w[0]},{w[1]},{w[2]}) = {L[w]} but "
                                  f"[{w[2]},Λ({w[0]},{w[2]},{w[1]}),{w[1]}] = {inter[w]}"))
    # negation: Λ(t,[e,m,f],[e,n,f]) = [e,Λ(t,m,n),f], index (t,m,n,e,f)
    tt = t[:, None, None, None, None]
    mm, nn = m[None, :, None, None, None], m[None, None, :, None, None]
    ee, ff = m[None, None, None, :, None], m[None, None, None, None, :]
    neg_l = L[tt, H[ee, mm, ff], H[ee, nn, ff]]
    neg_r = H[ee, L[tt, mm, nn], ff]
    r.checks.append(law("negation", neg_l, neg_r,
                        lambda w: f"Λ({w[0]},[{w[3]},{w[1]},{w[4]}],[{w[3]},{w[2]},{w[4]}]) = {neg_l[w]} "
                                  f"but [{w[3]},Λ({w[0]},{w[1]},{w[2]}),{w[4]}] = {neg_r[w]}"))
    # middle entry: Λ(t,[x,y,z],n) = [Λ(t,x,n),Λ(t,y,n),Λ(t,z,n)], index (t,x,y,z,n)
    x, y, z = m[None, :, None, None, None], m[None, None, :, None, None], m[None, None, None, :, None]
    nn = m[None, None, None, None, :]
    mid_l = L[tt, H[x, y, z], nn]
    mid_r = H[L[tt, x, nn], L[tt, y, nn], L[tt, z, nn]]
    r.checks.append(law("middle entry", mid_l, mid_r,
                        lambda w: f"Λ({w[0]},[{w[1]},{w[2]},{w[3]}],{w[4]}) = {mid_l[w]} but {mid_r[w]}"))
    # base change at (t,m,n,e) is the same statement as [Λ(t,e,m),m,Λ(t,m,n)] = Λ(t,e,n)
    bl, br = base_change_values(L, H)
    bc = bl == br
    t4, m4, n4, e4 = t[:, None, None, None], m[None, :, None, None], m[None, None, :, None], m[None, None, None, :]
    ic = H[L[t4, e4, m4], m4, L[t4, m4, n4]] == L[t4, e4, n4]
    r.checks.append(law("base change equivalence", bc, ic))
    r.info["base change holds"] = bool(bc.all())
    r.info["interchange form holds"] = bool(ic.all())
    if bc.all() != ic.all():
        r.checks.append(Check("base change equivalence (global)", False))
    if strict and not r.valid and hm.report.valid:
        f = r.failures[0]
        raise ContractViolation(f"derived identity {f.name} fails on a valid heap of modules: {f.detail}",
                                witness=f.witness)
    return r


def from_module(M):
    """Λ(t, e, n) = [t·n, t·e, e]."""
    A, H = M.a2, M.heap.t3
    L = H[A[:, None, :], A[:, :, None], np.arange(M.order)[None, :, None]]
    return FiniteHeapOfModules(M.truss, M.heap, L)


def to_module(hm, e):
    if hm.order == 0:
        raise PreconditionError("the empty heap of modules has no associated module")
    e = as_index(e, hm.order, "basepoint")
    return FiniteTModule(hm.truss, hm.heap, hm.L3[:, e, :])


def stabilizer_hm(hm, check=True):
    n = hm.order
    L = hm.L3
    mask = (L == np.arange(n)[None, None, :]).all(axis=(1, 2))
    S = tuple(int(u) for u in np.flatnonzero(mask))
    if check:
        _check_against_modules(hm, S, "stab")
        if S and not is_paragon(hm.truss, S)[0]:
            raise ContractViolation("stabilizer is not a paragon", witness=S)
    return S


def annihilator_hm(hm, check=True):
    n = hm.order
    L = hm.L3
    mask = (L == np.arange(n)[None, :, None]).all(axis=(1, 2))
    Z = tuple(int(z) for z in np.flatnonzero(mask))
    if check:
        _check_against_modules(hm, Z, "ann")
        if Z and not (is_paragon(hm.truss, Z)[0] and is_ideal(hm.truss, Z, "two-sided")):
            raise ContractViolation("annihilator is not a paragon two-sided ideal", witness=Z)
    return Z


def _check_against_modules(hm, S, which):
    for e in range(hm.order):
        mod = to_module(hm, e)
        other = stabilizer(mod) if which == "stab" else annihilator(mod, e)
        if tuple(other) != tuple(S):
            raise ContractViolation(f"{which} of the heap of modules differs from the module at {e}",
                                    witness=(e,))


@dataclass(frozen=True)
class Classification:
    inhabited: bool
    isotropic: bool
    contractible: bool
    stab: tuple
    ann: tuple


def classify(hm):
    S, Z = stabilizer_hm(hm), annihilator_hm(hm)
    return Classification(hm.order > 0, bool(S), bool(Z), S, Z)


@dataclass(frozen=True)
class HMQuotient:
    labels: tuple
    classes: tuple
    quotient: FiniteHeapOfModules


def congruence_classes(hm, N):
    n = hm.order
    mask = as_mask(n, N)
    if not mask.any():
        raise PreconditionError("congruence needs a non-empty sub-heap")
    w = check_closed(hm.heap, mask)
    if w is not None:
        raise PreconditionError(f"not a sub-heap: [{w[0]},{w[1]},{w[2]}] leaves the subset", witness=w)
    xs = np.flatnonzero(mask)
    L = hm.L3
    w = first_true(~mask[L[:, xs][:, :, xs]])
    if w is not None:
        wit = (w[0], int(xs[w[1]]), int(xs[w[2]]))
        raise PreconditionError(f"not closed under Λ: Λ{wit} leaves the subset", witness=wit)
    q = subheap_relation(hm.heap, mask)
    lab = np.array(q.labels)
    for cls in q.classes:
        c = np.zeros(n, dtype=bool)
        c[list(cls)] = True
        if not c[L[:, list(cls)][:, :, list(cls)]].all():
            raise ContractViolation("congruence class is not closed under Λ", witness=cls)
    reps = np.array([c[0] for c in q.classes])
    QL = lab[L[:, reps][:, :, reps]]
    bad = first_true(lab[L] != QL[:, lab[:, None], lab[None, :]])
    if bad is not None:
        raise ContractViolation("Λ does not descend to the quotient", witness=bad)
    out = FiniteHeapOfModules(hm.truss, q.quotient, QL)
    out.require_valid()
    return HMQuotient(q.labels, q.classes, out)


@dataclass(frozen=True)
class CrossProductTruss:
    base: FiniteHeapOfModules
    e: int
    truss: FiniteTruss

    def index(self, m, t):
        return m * self.base.truss.order + t

    def pair(self, i):
        return divmod(i, self.base.truss.order)


def product_heap(H1, H2):
    """Carrier H1 x H2 with index x*|H2| + y."""
    n1, n2 = H1.order, H2.order
    A, B = H1.t3, H2.t3
    T = (A[:, None, :, None, :, None] * n2 + B[None, :, None, :, None, :])
    return FiniteHeap(n1 * n2, T.reshape(n1 * n2, n1 * n2, n1 * n2))


def cross_product(hm, e):
    hm.require_valid()
    k, n = hm.truss.order, hm.order
    if k == 0 or n == 0:
        raise PreconditionError("cross product needs non-empty truss and carrier")
    e = as_index(e, n, "basepoint")
    H, L, TM = hm.heap.t3, hm.L3, hm.truss.m2
    # (m,s)(n,t) = ([Λ(s,e,n), e, m], st); index (m,s,n,t)
    m_ = np.arange(n)[:, None, None, None]
    s_ = np.arange(k)[None, :, None, None]
    n_ = np.arange(n)[None, None, :, None]
    t_ = np.arange(k)[None, None, None, :]
    first = H[L[s_, e, n_], e, m_]
    mul = (first * k + TM[s_, t_]).reshape(n * k, n * k)
    T = FiniteTruss(product_heap(hm.heap, hm.truss.heap), mul)
    T.require_valid()
    return CrossProductTruss(hm, e, T)


def cross_product_lemmas(hm, e):
    """Checks, with witnesses, the structure around M x T at basepoint e."""
    from .iso import find_isomorphism
    cp = cross_product(hm, e)
    k, n = hm.truss.order, hm.order
    H, L = hm.heap.t3, hm.L3
    r = ValidationReport("cross product", info={"e": e})
    # action of M x T on M: (m,s)·x = [Λ(s,e,x), e, m]
    act = np.array([[H[L[s, e, x], e, m] for x in range(n)] for m in range(n) for s in range(k)])
    mod = FiniteTModule(cp.truss, hm.heap, act)
    r.checks.append(_sub("module over the cross product", mod.report))
    r.checks.append(law("(m,s)·e = m", act[:, e], np.repeat(np.arange(n), k)))
    # fibres M x {u} are paragons with quotient isomorphic to T
    for u in range(k):
        fibre = [m * k + u for m in range(n)]
        good, w = is_paragon(cp.truss, fibre)
        r.checks.append(Check(f"fibre {u} paragon", good, w))
        if good:
            quo, _ = quotient_by_paragon(cp.truss, fibre)
            sigma = find_isomorphism(quo, hm.truss)
            r.checks.append(Check(f"fibre {u} quotient ≅ T", sigma is not None, None if sigma is None else tuple(sigma)))
    base = [e * k + t for t in range(k)]
    r.checks.append(Check("{e} x T sub-truss", is_subtruss(cp.truss, base)))
    isos = {}
    for f in range(n):
        sigma = find_isomorphism(cp.truss, cross_product(hm, f).truss)
        isos[f] = None if sigma is None else tuple(sigma)
        r.checks.append(Check(f"M x T at {e} ≅ at {f}", sigma is not None, isos[f]))
    r.info["isomorphisms"] = isos
    return r


@dataclass(frozen=True)
class HModMorphism:
    source: FiniteHeapOfModules
    target: FiniteHeapOfModules
    values: tuple


def tgroup_morphisms_at(M, m, N, nb, budget):
    """T-group morphisms (retract(M,m), Λ(-,m,-)) -> (retract(N,nb), Λ(-,nb,-))."""
    G, G2 = retract(M.heap, m), retract(N.heap, nb)
    A, B = M.L3[:, m, :], N.L3[:, nb, :]
    out = []
    for f in group_homomorphisms(G, G2, budget):
        fa = np.array(f)
        if (fa[A] == B[:, fa]).all():
            out.append(f)
    return out


def hmodule_morphisms(M, N, budget=None, check=True):
    if M.truss != N.truss:
        raise StructuralError("heaps of modules over different trusses")
    budget = as_budget(budget)
    L, L2 = M.L3, N.L3
    out = []
    for f in heap_morphisms(M.heap, N.heap, budget):
        budget.spend()
        fa = np.array(f, dtype=np.int64)
        if M.order == 0 or (fa[L] == L2[:, fa[:, None], fa[None, :]]).all():
            out.append(f)
    if check:
        _check_morphism_theorems(M, N, out, budget)
    return [HModMorphism(M, N, f) for f in out]


def _check_morphism_theorems(M, N, maps, budget):
    if M.order == 0:
        if maps != [()]:
            raise ContractViolation("the empty heap of modules is not initial")
        return
    consts = [tuple([c] * M.order) for c in range(N.order)]
    missing = [c for c in consts if c not in maps]
    if missing:
        raise ContractViolation("constant map is not a morphism", witness=missing[0])
    HN = N.heap.t3
    for m in range(M.order):
        for nb in range(N.order):
            lhs = sorted(f for f in maps if f[m] == nb)
            rhs = tgroup_morphisms_at(M, m, N, nb, budget)
            if lhs != rhs:
                raise ContractViolation("morphisms with f(m)=n differ from T-group morphisms of retracts",
                                        witness=(m, nb))
    # every f splits as f(x) = [F(x), n, f(m)] with F = tau_{f(m)}^n o f a T-group morphism
    for f in maps:
        fa = np.array(f)
        for m in range(M.order):
            for nb in range(N.order):
                F = HN[fa, fa[m], nb]
                if not (HN[F, nb, fa[m]] == fa).all():
                    raise ContractViolation("translation decomposition fails", witness=(f, m, nb))
                if tuple(int(v) for v in F) not in set(tgroup_morphisms_at(M, m, N, nb, budget)):
                    raise ContractViolation("translated morphism is not a T-group morphism", witness=(f, m, nb))


def tgroup_endomorphisms(G, budget=None):
    """Additive T-linear endomorphisms of a T-group, sorted."""
    A = G.a2
    out = []
    for f in group_homomorphisms(G.group, G.group, as_budget(budget)):
        fa = np.array(f)
        if (fa[A] == A[:, fa]).all():
            out.append(f)
    return out


def tgroup_endo_truss(G, budget=None):
    maps = tgroup_endomorphisms(G, budget)
    space = function_space(maps, heap_from_group(G.group))
    T = FiniteTruss(space.heap, composition_table(space, G.order))
    T.require_valid()
    return T, space.maps


@dataclass(frozen=True)
class EndoTrussET:
    truss: FiniteTruss
    maps: np.ndarray
    linear: FiniteTruss           # T-Grp(M)
    linear_maps: np.ndarray
    cross: CrossProductTruss      # M x^0 T-Grp(M)
    iso: tuple                    # index in E_T -> index in the cross product


def endo_truss_ET(G, budget=None):
    G.require_valid()
    budget = as_budget(budget)
    mod, zero = tgroup_to_module(G)
    hm = from_module(mod)
    maps = [m.values for m in hmodule_morphisms(hm, hm, budget)]
    space = function_space(maps, hm.heap)
    ET = FiniteTruss(space.heap, composition_table(space, G.order))
    ET.require_valid()
    lin, lin_maps = tgroup_endo_truss(G, budget)
    evaluation = FiniteTModule(lin, hm.heap, lin_maps)
    evaluation.require_valid()
    cp = cross_product(from_module(evaluation), zero)
    Hh = hm.heap.t3
    F = space.maps
    # f -> (f(0), F) with F(x) = [f(x), f(0), 0]
    shifted = Hh[F, F[:, zero][:, None], zero]
    idx = lookup_rows(lin_maps, max(G.order, 1), shifted)
    phi = F[:, zero] * lin.order + idx
    if sorted(phi.tolist()) != list(range(cp.truss.order)):
        raise ContractViolation("f -> (f(0), F) is not a bijection onto the cross product")
    bad = first_true(phi[ET.heap.t3] != cp.truss.heap.t3[phi[:, None, None], phi[None, :, None], phi[None, None, :]])
    if bad is None:
        bad = first_true(phi[ET.m2] != cp.truss.m2[phi[:, None], phi[None, :]])
    if bad is not None:
        raise ContractViolation("f -> (f(0), F) does not preserve the truss structure", witness=bad)
    return EndoTrussET(ET, F, lin, lin_maps, cp, tuple(int(v) for v in phi))


@dataclass(frozen=True)
class BKVerdict:
    trusses_isomorphic: bool
    truss_witness: tuple | None
    intertwined: bool
    intertwining_witness: tuple | None


def baer_kaplansky_check(G, H, budget=None):
    from .iso import find_isomorphism
    budget = as_budget(budget)
    EG, EH = endo_truss_ET(G, budget), endo_truss_ET(H, budget)
    sigma = find_isomorphism(EG.truss, EH.truss)
    first = sigma is not None
    second, wit = False, None
    if G.order == H.order:
        linG, linH = EG.linear_maps, EH.linear_maps
        keysH = {tuple(int(v) for v in row): i for i, row in enumerate(linH)}
        for phi in group_homomorphisms(G.group, H.group, budget):
            if len(set(phi)) != G.order:
                continue
            p = np.array(phi)
            pinv = np.argsort(p)
            # the intertwining law forces hat(F) = phi o F o phi^-1
            conj = p[linG[:, pinv]]
            hat = [keysH.get(tuple(int(v) for v in row)) for row in conj]
            if None in hat or len(set(hat)) != len(linH):
                continue
            hat = np.array(hat)
            if not (p[linG] == linH[hat][:, p]).all():
                continue
            if (hat[EG.linear.heap.t3] == EH.linear.heap.t3[hat[:, None, None], hat[None, :, None], hat[None, None, :]]).all() \
                    and (hat[EG.linear.m2] == EH.linear.m2[hat[:, None], hat[None, :]]).all():
                second, wit = True, (tuple(phi), tuple(int(v) for v in hat))
                break
    if first != second:
        raise ContractViolation("the two Baer–Kaplansky verdicts disagree",
                                witness=(first, second))
    return BKVerdict(first, None if sigma is None else tuple(sigma), second, wit)


@dataclass(frozen=True)
class Derivations:
    maps: np.ndarray
    heap: FiniteHeap
    hmodule: FiniteHeapOfModules | None


def derivations(T, budget=None):
    T.require_valid()
    H, M = T.heap.t3, T.m2
    out = []
    for D in heap_morphisms(T.heap, T.heap, as_budget(budget)):
        d = np.array(D)
        if T.order == 0 or (d[M] == H[M[d[:, None], np.arange(T.order)[None, :]], M,
                                      M[np.arange(T.order)[:, None], d[None, :]]]).all():
            out.append(D)
    space = function_space(out, T.heap)
    space.heap.require_valid()   # closure under the pointwise bracket is checked by lookup
    hm = None
    if T.commutative and out:
        F = space.maps
        # Λ(t, D1, D2)(s) = [D1(s), t·D1(s), t·D2(s)]
        t_ = np.arange(T.order)[:, None, None, None]
        F1, F2 = F[None, :, None, :], F[None, None, :, :]
        vals = H[F1, M[t_, F1], M[t_, F2]]
        idx = lookup_rows(F, max(T.order, 1), vals.reshape(-1, T.order))
        hm = FiniteHeapOfModules(T, space.heap, idx)
        if not hm.report.valid:
            raise ContractViolation("heap of derivations fails the axioms: " + hm.report.failures[0].detail)
    return Derivations(space.maps, space.heap, hm)


@dataclass(frozen=True)
class EntropyVerdict:
    status: str          # "holds", "hypothesis-not-satisfied", "contract-violation"
    witness: tuple | None = None


def entropy_check(hm, t, t2, strict=False):
    L, TM = hm.L3, hm.truss.m2
    a, b = int(TM[t, t2]), int(TM[t2, t])
    per_e = (L[a] == L[b]).all(axis=1)          # hypothesis at each e
    if not per_e.any():
        return EntropyVerdict("hypothesis-not-satisfied")
    if not per_e.all():
        v = EntropyVerdict("contract-violation", ("hypothesis", int(np.flatnonzero(~per_e)[0])))
    else:
        n = hm.order
        m = np.arange(n)
        w, x, y, z = m[:, None, None, None], m[None, :, None, None], m[None, None, :, None], m[None, None, None, :]
        # Λ(t,Λ(t',m,m'),Λ(t',m'',n)) = Λ(t',Λ(t,m,m''),Λ(t,m',n)) over (m,m',m'',n)
        lhs = L[t, L[t2, w, x], L[t2, y, z]]
        rhs = L[t2, L[t, w, y], L[t, x, z]]
        bad = first_true(lhs != rhs)
        v = EntropyVerdict("holds") if bad is None else EntropyVerdict("contract-violation", bad)
    if strict and v.status == "contract-violation":
        raise ContractViolation("entropy law fails", witness=v.witness)
    return v


@dataclass(frozen=True)
class AffineClassification:
    is_affine: bool
    module: FiniteTGroup | None


def ring_affine_classify(hm, budget=None):
    T = hm.truss
    if T.unit is None or T.absorber is None:
        raise PreconditionError("ring classification needs a truss with unit and absorber")
    c = classify(hm)
    affine = c.inhabited and T.unit in c.stab and T.absorber in c.ann
    if not affine:
        return AffineClassification(False, None)
    e = 0
    G = FiniteTGroup(retract(hm.heap, e), T, hm.L3[:, e, :])
    G.require_valid()
    mod, _ = tgroup_to_module(G)
    if from_module(mod) != hm:
        raise ContractViolation("the reconstructed module does not give back the heap of modules")
    H = hm.heap.t3
    for f in hmodule_morphisms(hm, hm, budget, check=False):
        fa = np.array(f.values)
        g = H[fa, fa[e], e]                   # [f(-), f(0), 0]
        if not (g[G.group.table] == G.group.table[g[:, None], g[None, :]]).all() or not (g[G.a2] == G.a2[:, g]).all():
            raise ContractViolation("[f(-), f(0), 0] is not a module map", witness=f.values)
    return AffineClassification(True, G)


def trivial_hmodule(T, H, side):
    """Λ(t,h,h') = h (side='first') or h' (side='third')."""
    k, n = T.order, H.order
    m = np.arange(n)
    L = np.broadcast_to(m[None, :, None] if side == "first" else m[None, None, :], (k, n, n))
    return FiniteHeapOfModules(T, H, L)
