"""Affine spaces over trusses and their equivalence with heaps of modules."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractViolation, PreconditionError, StructuralError
from .heaps import FiniteAbelianGroup, FiniteHeap, translation_group
from .hmod import FiniteHeapOfModules, annihilator_hm, stabilizer_hm
from .modules import FiniteTGroup
from .report import Check, ValidationReport, first_true, law
from .tables import Frozen, as_table
from .trusses import truss_from_ring


@dataclass(frozen=True, eq=False)
class FiniteTAffineSpace(Frozen):
    carrier: int
    group: FiniteTGroup
    rho: np.ndarray           # flat |G| x carrier

    def __post_init__(self):
        k = int(self.carrier)
        object.__setattr__(self, "carrier", k)
        object.__setattr__(self, "rho", as_table(self.rho, self.group.order * k, max(k, 1), "rho"))

    @property
    def r2(self):
        return self.rho.reshape(self.group.order, self.carrier)

    @cached_property
    def report(self):
        return validate_affine(self.carrier, self.group, self.rho)

    def require_valid(self):
        self.report.require()
        return self

    @property
    def difference(self):
        """difference[b, a] = the group element g with rho(g, a) = b."""
        return self.report.info["difference"]


def validate_affine(carrier, G, rho):
    A = FiniteTAffineSpace(carrier, G, rho)
    k, R = A.carrier, A.r2
    r = ValidationReport("affine", info={"carrier": k})
    gr = G.report
    r.checks.append(Check("tgroup", gr.valid, None, "" if gr.valid else gr.failures[0].detail))
    x = np.arange(k)
    w = first_true((np.sort(R, axis=1) != x[None, :]).any(axis=1)) if k else None
    r.checks.append(Check("permutation", w is None, w, "" if w is None else f"rho({w[0]},-) is not a bijection"))
    add = G.group.table
    g = np.arange(G.order)
    lhs = R[add[g[:, None, None], g[None, :, None]], x[None, None, :]]
    rhs = R[g[:, None, None], R[g[None, :, None], x[None, None, :]]]
    r.checks.append(law("homomorphism", lhs, rhs,
                        lambda w: f"rho({w[0]}+{w[1]},{w[2]}) = {lhs[w]} but rho({w[0]},rho({w[1]},{w[2]})) = {rhs[w]}"))
    same = (R[:, None, :] == R[None, :, :]).all(axis=2) & (g[:, None] != g[None, :])
    w = first_true(same)
    r.checks.append(Check("injectivity", w is None, w, "" if w is None else f"rho({w[0]}) = rho({w[1]})"))
    # shear (g,a) -> (rho(g,a), a) is bijective iff every column g -> rho(g,a) is a bijection onto the carrier
    if k and G.order != k:
        r.checks.append(Check("shear", False, None, f"{G.order} group elements against {k} points"))
    else:
        w = first_true((np.sort(R, axis=0) != x[:, None]).any(axis=0)) if k else None
        r.checks.append(Check("shear", w is None, w, "" if w is None else f"g -> rho(g,{w[0]}) is not a bijection"))
    if r.check("shear").passed and k:
        diff = np.zeros((k, k), dtype=np.int64)
        for a in range(k):
            diff[R[:, a], a] = g
        r.info["difference"] = diff
    else:
        r.info["difference"] = np.zeros((k, k), dtype=np.int64) if not k else None
    return r


def trivial_group():
    return FiniteAbelianGroup(1, [0], 0, [0])


def empty_affine(T):
    return FiniteTAffineSpace(0, FiniteTGroup(trivial_group(), T, np.zeros(T.order, dtype=np.int64)), [])


def phi(AS):
    AS.require_valid()
    T = AS.group.truss
    k = AS.carrier
    if k == 0:
        return FiniteHeapOfModules(T, FiniteHeap(0, []), [])
    R, U = AS.r2, AS.difference
    x = np.arange(k)
    br = R[U[:, :, None], x[None, None, :]]                  # [a,b,c] = rho(U[a,b], c)
    act = AS.group.a2
    lam = R[act[:, U.T], x[None, :, None]]                   # Λ(t,a,b) = rho(t·U[b,a], a)
    hm = FiniteHeapOfModules(T, FiniteHeap(k, br), lam)
    if not hm.report.valid:
        raise ContractViolation("phi produced an invalid heap of modules: " + hm.report.failures[0].detail)
    return hm


@dataclass(frozen=True)
class TransTGroup:
    tgroup: FiniteTGroup
    perms: tuple
    pair_index: np.ndarray


def trans_tgroup(hm):
    hm.require_valid()
    if hm.order == 0:
        raise PreconditionError("the empty heap of modules has no translations")
    tg = translation_group(hm.heap)
    P, L = tg.pair_index, hm.L3
    n, kT = hm.order, hm.truss.order
    act = np.full((kT, tg.group.order), -1, dtype=np.int64)
    for t in range(kT):
        for a in range(n):
            for b in range(n):
                i, j = P[a, b], P[a, L[t, a, b]]
                if act[t, i] < 0:
                    act[t, i] = j
                elif act[t, i] != j:
                    raise ContractViolation("t·tau_a^b depends on the representative", witness=(t, a, b))
    G = FiniteTGroup(tg.group, hm.truss, act)
    G.require_valid()
    return TransTGroup(G, tg.perms, P)


def psi(hm):
    hm.require_valid()
    if hm.order == 0:
        return empty_affine(hm.truss)
    tt = trans_tgroup(hm)
    AS = FiniteTAffineSpace(hm.order, tt.tgroup, np.array(tt.perms))
    AS.require_valid()
    return AS


@dataclass(frozen=True)
class AffineMorphismPair:
    F: tuple      # carrier map
    f: tuple      # T-group map


def validate_affine_morphism(pair, A, B):
    """(True, None) or (False, witness).  Checks that f is a T-group morphism and the square commutes."""
    F, f = np.asarray(pair.F, dtype=np.int64), np.asarray(pair.f, dtype=np.int64)
    if F.shape != (A.carrier,) or f.shape != (A.group.order,):
        raise StructuralError("morphism pair has the wrong lengths")
    GA, GB = A.group, B.group
    w = first_true(f[GA.group.table] != GB.group.table[f[:, None], f[None, :]])
    if w is not None:
        return False, ("additive",) + w
    w = first_true(f[GA.a2] != GB.a2[:, f])
    if w is not None:
        return False, ("linear",) + w
    if A.carrier:
        w = first_true(F[A.r2] != B.r2[f[:, None], F[None, :]])
        if w is not None:
            return False, ("equivariance",) + w
    return True, None


def compose_pairs(second, first):
    F1, f1 = np.asarray(first.F), np.asarray(first.f)
    F2, f2 = np.asarray(second.F), np.asarray(second.f)
    return AffineMorphismPair(tuple(int(v) for v in F2[F1]) if F1.size else (),
                              tuple(int(v) for v in f2[f1]))


@dataclass(frozen=True)
class RoundtripVerdict:
    exact: bool
    epsilon: tuple | None = None


def counit(AS):
    """epsilon: Trans(phi(AS)) -> G, tau_a^b -> the g with rho(g,a) = b."""
    Y = psi(phi(AS))
    if AS.carrier == 0:
        return Y, (0,)
    tt = trans_tgroup(phi(AS))
    U = AS.difference
    eps = [-1] * tt.tgroup.order
    k = AS.carrier
    for a in range(k):
        for b in range(k):
            i = tt.pair_index[a, b]
            g = int(U[b, a])
            if eps[i] not in (-1, g):
                raise ContractViolation("epsilon is not well defined", witness=(a, b))
            eps[i] = g
    return Y, tuple(eps)


def equivalence_roundtrip(x):
    if isinstance(x, FiniteHeapOfModules):
        if phi(psi(x)) != x:
            raise ContractViolation("phi(psi(M)) differs from M")
        return RoundtripVerdict(True)
    Y, eps = counit(x)
    pair = AffineMorphismPair(tuple(range(x.carrier)), eps)
    good, w = validate_affine_morphism(pair, Y, x)
    if not good:
        raise ContractViolation("(id, epsilon) is not an affine morphism", witness=w)
    if sorted(eps) != list(range(x.group.order)):
        raise ContractViolation("epsilon is not a bijection", witness=eps)
    return RoundtripVerdict(True, eps)


def affine_Rmodule_axioms(ring, carrier, bracket, lam):
    """The point-and-vector axioms of an affine module, checked literally, and compared with the
    heap-of-modules description (valid, 1 in Stab, 0 in Ann)."""
    T = truss_from_ring(ring)
    heap = FiniteHeap(carrier, bracket)
    hm = FiniteHeapOfModules(T, heap, lam)
    H, L = heap.t3, hm.L3
    n, k = heap.order, T.order
    x = np.arange(n)
    r = ValidationReport("affine module")
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    # index convention (b, a, c) for the point axioms
    r.checks.append(law("P1", H[b, a, c], H[c, a, b]))
    r.checks.append(law("P2", H[x[:, None], x[None, :], x[None, :]], np.broadcast_to(x[:, None], (n, n))))
    e4 = x[None, None, None, :]
    b4, a4, c4 = x[:, None, None, None], x[None, :, None, None], x[None, None, :, None]
    r.checks.append(law("P3", H[H[b4, a4, c4], c4, e4], H[b4, a4, e4]))
    t = np.arange(k)
    r4, a4, b4, c4 = t[:, None, None, None], x[None, :, None, None], x[None, None, :, None], x[None, None, None, :]
    r.checks.append(law("V0", H[L[r4, a4, b4], a4, c4], L[r4, c4, H[b4, a4, c4]]))
    r.checks.append(law("V1", H[L[r4, a4, b4], a4, L[r4, a4, c4]], L[r4, a4, H[b4, a4, c4]]))
    radd = ring.group.table
    rr, ss = t[:, None, None, None], t[None, :, None, None]
    aa, bb = x[None, None, :, None], x[None, None, None, :]
    r.checks.append(law("V2", H[L[rr, aa, bb], aa, L[ss, aa, bb]], L[radd[rr, ss], aa, bb]))
    rmul = ring.m2
    r.checks.append(law("V3", L[rmul[rr, ss], aa, bb], L[rr, aa, L[ss, aa, bb]]))
    if ring.unit is None:
        raise PreconditionError("affine module axioms need a unital ring")
    r.checks.append(law("V4", L[ring.unit], np.broadcast_to(x[None, :], (n, n))))
    if heap.report.valid and hm.report.valid:
        described = ring.unit in stabilizer_hm(hm) and ring.zero in annihilator_hm(hm)
    else:
        described = False
    if n == 0:
        described = True
    if r.valid != described:
        raise ContractViolation("point-vector axioms disagree with the heap-of-modules description",
                                witness=(r.valid, described))
    return r
