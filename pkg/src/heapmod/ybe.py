"""Shelves, spindles, racks and quandles; set-theoretic Yang-Baxter maps; the section and
retraction galleries."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractViolation, PreconditionError, StructuralError
from .heaps import FiniteAbelianGroup, group_homomorphisms, heap_from_group, as_budget
from .hmod import FiniteHeapOfModules
from .report import Check, ValidationReport, first_true, law
from .tables import Frozen, as_index, as_table
from .trusses import FiniteRing, function_space, lookup_rows, truss_from_ring


@dataclass(frozen=True, eq=False)
class BinaryStructure(Frozen):
    order: int
    op: np.ndarray

    def __post_init__(self):
        n = int(self.order)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "op", as_table(self.op, n * n, max(n, 1), "op"))

    @classmethod
    def from_table(cls, order, op):
        return cls(order, op)

    @property
    def o2(self):
        return self.op.reshape(self.order, self.order)

    @cached_property
    def classification(self):
        return _classify(self)

    @property
    def flags(self):
        return self.classification.info["flags"]

    @property
    def division(self):
        return self.classification.info["division"]


def _classify(B):
    n = B.order
    O = B.o2
    x = np.arange(n)
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    r = ValidationReport("binary")
    left_sd = law("left self-distributivity", O[a, O[b, c]], O[O[a, b], O[a, c]],
                  lambda w: f"{w[0]}⋄({w[1]}⋄{w[2]}) != ({w[0]}⋄{w[1]})⋄({w[0]}⋄{w[2]})")
    right_sd = law("right self-distributivity", O[O[b, c], a], O[O[b, a], O[c, a]],
                   lambda w: f"({w[1]}⋄{w[2]})⋄{w[0]} != ({w[1]}⋄{w[0]})⋄({w[2]}⋄{w[0]})")
    idem = law("idempotency", O[x, x], x, lambda w: f"{w[0]}⋄{w[0]} != {w[0]}")
    rows = np.sort(O, axis=1) == x[None, :]
    bad_row = first_true(~rows.all(axis=1))
    division = Check("left division", bad_row is None, bad_row,
                     "" if bad_row is None else f"z ↦ {bad_row[0]}⋄z is not a bijection")
    w4 = [x[:, None, None, None], x[None, :, None, None], x[None, None, :, None], x[None, None, None, :]]
    entropic = law("entropic", O[O[w4[0], w4[1]], O[w4[2], w4[3]]], O[O[w4[0], w4[2]], O[w4[1], w4[3]]])
    r.checks = [left_sd, right_sd, idem, division, entropic]
    shelf = left_sd.passed
    flags = {
        "shelf": shelf,
        "spindle": shelf and idem.passed,
        "rack": shelf and division.passed,
        "quandle": shelf and division.passed and idem.passed,
        "entropic": entropic.passed,
    }
    r.info["flags"] = flags
    div = None
    if division.passed:
        div = np.argsort(O, axis=1)          # div[x, y] = z with x⋄z = y
    r.info["division"] = div
    if idem.passed and entropic.passed and not (left_sd.passed and right_sd.passed):
        raise ContractViolation("idempotent entropic table that is not self-distributive")
    return r


def classify_binary(op, order):
    B = BinaryStructure(order, op)
    B.classification
    return B


@dataclass(frozen=True, eq=False)
class YBEPairMap(Frozen):
    order: int
    r: np.ndarray            # flat, entry 2*(x*n+y)+i is component i of r(x,y)

    def __post_init__(self):
        n = int(self.order)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "r", as_table(self.r, 2 * n * n, max(n, 1), "r"))

    @property
    def r3(self):
        return self.r.reshape(self.order, self.order, 2)

    @cached_property
    def bijective(self):
        codes = self.r3[..., 0] * self.order + self.r3[..., 1]
        return len(np.unique(codes)) == self.order ** 2

    @cached_property
    def left_nondegenerate(self):
        """For each x, y -> r1(x,y) is a bijection."""
        n = self.order
        return bool((np.sort(self.r3[..., 0], axis=1) == np.arange(n)).all())

    @cached_property
    def right_nondegenerate(self):
        """For each y, x -> r2(x,y) is a bijection."""
        n = self.order
        return bool((np.sort(self.r3[..., 1], axis=0) == np.arange(n)[:, None]).all())

    @property
    def nondegenerate(self):
        return self.bijective and self.left_nondegenerate and self.right_nondegenerate

    @cached_property
    def inverse(self):
        if not self.bijective:
            return None
        n = self.order
        inv = np.zeros((n, n, 2), dtype=np.int64)
        r = self.r3
        for x in range(n):
            for y in range(n):
                inv[r[x, y, 0], r[x, y, 1]] = (x, y)
        return YBEPairMap(n, inv)


def pair_map_from_spindle(B):
    """r(x, y) = (x⋄y, x)."""
    n = B.order
    r = np.stack([B.o2, np.broadcast_to(np.arange(n)[:, None], (n, n))], axis=-1)
    return YBEPairMap(n, r)


@dataclass(frozen=True)
class YBEVerdict:
    holds: bool
    witness: tuple | None = None
    detail: str = ""


def check_ybe(rm):
    n = rm.order
    R1, R2 = rm.r3[..., 0], rm.r3[..., 1]
    x = np.arange(n)
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    # left side (r x id)(id x r)(r x id)
    p, q = R1[a, b], R2[a, b]
    q2, c2 = R1[q, c], R2[q, c]
    l1, l2, l3 = R1[p, q2], R2[p, q2], c2
    # right side (id x r)(r x id)(id x r)
    q, s = R1[b, c], R2[b, c]
    a2, q3 = R1[a, q], R2[a, q]
    m1, m2, m3 = a2, R1[q3, s], R2[q3, s]
    bad = (l1 != m1) | (l2 != m2) | (l3 != m3)
    w = first_true(bad)
    if w is None:
        return YBEVerdict(True)
    return YBEVerdict(False, w, f"({l1[w]},{l2[w]},{l3[w]}) != ({m1[w]},{m2[w]},{m3[w]})")


def spindle_from_hmodule(hm, u):
    u = as_index(u, hm.truss.order, "u")
    B = classify_binary(hm.L3[u], hm.order)
    if not (B.flags["spindle"] and B.flags["entropic"]):
        raise ContractViolation(f"Λ({u},-,-) is not an entropic spindle")
    return B


def ybe_map(hm, u):
    return pair_map_from_spindle(spindle_from_hmodule(hm, u))


@dataclass(frozen=True)
class QuandleSolution:
    spindle: BinaryStructure
    r: YBEPairMap
    inverse: YBEPairMap


def quandle_from_unit(hm, u, ubar):
    k = hm.truss.order
    u, ubar = as_index(u, k, "u"), as_index(ubar, k, "ubar")
    L = hm.L3
    uu = hm.truss.times(u, ubar)
    w = first_true(L[uu] != np.arange(hm.order)[None, :])
    if w is not None:
        raise PreconditionError(f"Λ({u}·{ubar},{w[0]},{w[1]}) = {L[uu][w]} != {w[1]}", witness=w)
    B = spindle_from_hmodule(hm, u)
    if not B.flags["quandle"]:
        raise ContractViolation("spindle with an inverting element is not a quandle")
    r = pair_map_from_spindle(B)
    n = hm.order
    m = np.arange(n)
    # r^-1(m, n) = (n, Λ(ubar, n, m))
    inv = YBEPairMap(n, np.stack([np.broadcast_to(m[None, :], (n, n)), L[ubar].T], axis=-1))
    for first, second in ((r, inv), (inv, r)):
        comp = first.r3[second.r3[..., 0], second.r3[..., 1]]
        ident = np.stack(np.meshgrid(m, m, indexing="ij"), axis=-1)
        w = first_true((comp != ident).any(axis=-1))
        if w is not None:
            raise ContractViolation("r and its claimed inverse do not compose to the identity", witness=w)
    if not (r.bijective and r.left_nondegenerate and r.right_nondegenerate):
        raise ContractViolation("quandle solution is degenerate")
    return QuandleSolution(B, r, inv)


@dataclass(frozen=True)
class PairVerdict:
    status: str        # "holds", "hypothesis-not-satisfied", "contract-violation"
    witness: tuple | None = None


def entropic_pair_check(hm, u, v):
    L, TM = hm.L3, hm.truss.m2
    if not (L[TM[u, v]] == L[TM[v, u]]).all():
        return PairVerdict("hypothesis-not-satisfied")
    n = hm.order
    x = np.arange(n)
    a, b, c, d = x[:, None, None, None], x[None, :, None, None], x[None, None, :, None], x[None, None, None, :]
    U, V = L[u], L[v]
    lhs = V[U[a, b], U[c, d]]
    rhs = U[V[a, c], V[b, d]]
    w = first_true(lhs != rhs)
    return PairVerdict("holds") if w is None else PairVerdict("contract-violation", w)


def affine_spindle(G, f):
    f = np.asarray(f, dtype=np.int64)
    A, neg = G.table, G.neg
    if f.shape != (G.order,):
        raise StructuralError("endomorphism has the wrong length")
    w = first_true(f[A] != A[f[:, None], f[None, :]])
    if w is not None:
        raise PreconditionError(f"map is not additive at {w}", witness=w)
    x = np.arange(G.order)
    op = A[x[:, None], f[A[x[None, :], neg[x][:, None]]]]          # x + f(y - x)
    B = classify_binary(op, G.order)
    if not (B.flags["spindle"] and B.flags["entropic"]):
        raise ContractViolation("affine spindle is not an entropic spindle")
    g = A[x, neg[f]]                                                # id - f
    mirror = A[x[None, :], g[A[x[:, None], neg[x][None, :]]]]     # mirror[x,y] = y + g(x - y)
    w = first_true(op != mirror)
    if w is not None:
        raise ContractViolation("mirror identity fails", witness=w)
    return B


def export_ybe_text(rm):
    n = rm.order
    lines = [f"order {n} nondegenerate {'true' if rm.nondegenerate else 'false'}"]
    r = rm.r3
    for x in range(n):
        for y in range(n):
            lines.append(f"{x} {y} -> {r[x, y, 0]} {r[x, y, 1]}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Gallery:
    maps: tuple                          # the sections or retractions as value tuples
    hmodule: FiniteHeapOfModules | None
    reason: str = ""                     # why the gallery is empty, if it is


@dataclass(frozen=True)
class ExactSequence:
    """0 -> P -> Q -> R -> 0 over Z/n, given by the tables of iota and pi."""
    modulus: int
    P: FiniteAbelianGroup
    Q: FiniteAbelianGroup
    R: FiniteAbelianGroup
    iota: tuple
    pi: tuple

    def splittings(self, budget=None):
        return splittings_gallery(self.modulus, self.P, self.Q, self.R, self.iota, self.pi, budget)

    def retractions(self, budget=None):
        return retractions_gallery(self.modulus, self.P, self.Q, self.R, self.iota, self.pi, budget)


def _check_exact(P, Q, R, iota, pi):
    iota, pi = np.asarray(iota, dtype=np.int64), np.asarray(pi, dtype=np.int64)
    if iota.shape != (P.order,) or pi.shape != (Q.order,):
        raise StructuralError("sequence maps have the wrong length")
    for name, f, S, Tg in (("iota", iota, P, Q), ("pi", pi, Q, R)):
        if f.size and (f.min() < 0 or f.max() >= Tg.order):
            raise StructuralError(f"{name} has a value outside its target")
        if (f[S.table] != Tg.table[f[:, None], f[None, :]]).any():
            raise PreconditionError(f"{name} is not additive")
    if len(set(iota.tolist())) != P.order:
        raise PreconditionError("iota is not injective")
    if set(pi.tolist()) != set(range(R.order)):
        raise PreconditionError("pi is not surjective")
    if set(iota.tolist()) != {q for q in range(Q.order) if pi[q] == R.zero}:
        raise PreconditionError("image of iota differs from kernel of pi")
    return iota, pi


def _scalar_table(G, n):
    """a·x for a in Z/n, x in G; requires n·x = 0."""
    S = np.zeros((n, G.order), dtype=np.int64)
    for x in range(G.order):
        acc = G.zero
        for a in range(n):
            S[a, x] = acc
            acc = G.plus(acc, x)
        if acc != G.zero:
            raise PreconditionError(f"element {x} is not killed by {n}")
    return S


def _gallery_hmodule(n, maps, target, lam_rows):
    space = function_space(maps, heap_from_group(target))
    T = truss_from_ring(FiniteRing.zmod(n))
    rows = lam_rows(space.maps)                       # (n, k, k, domain)
    idx = lookup_rows(space.maps, max(target.order, 1), rows.reshape(-1, space.maps.shape[1]))
    hm = FiniteHeapOfModules(T, space.heap, idx)
    if not hm.report.valid:
        raise ContractViolation("gallery structure fails the axioms: " + hm.report.failures[0].detail)
    return hm


def _exact_or_reason(P, Q, R, iota, pi):
    try:
        return _check_exact(P, Q, R, iota, pi), ""
    except PreconditionError as exc:
        return None, f"not a short exact sequence: {exc}"


def splittings_gallery(n, P, Q, R, iota, pi, budget=None):
    maps, reason = _exact_or_reason(P, Q, R, iota, pi)
    if maps is None:
        return Gallery((), None, reason)
    iota, pi = maps
    sections = [s for s in group_homomorphisms(R, Q, as_budget(budget))
                if all(pi[s[r]] == r for r in range(R.order))]
    if not sections:
        return Gallery((), None, "pi has no additive section")
    SR = _scalar_table(R, n)
    A = Q.table
    one_minus = np.array([(1 - a) % n for a in range(n)])

    def lam(F):
        # Λ(a,τ,σ)(x) = σ(a·x) + τ((1-a)·x)
        a = np.arange(n)[:, None, None, None]
        tau = np.arange(F.shape[0])[None, :, None, None]
        sig = np.arange(F.shape[0])[None, None, :, None]
        x = np.arange(R.order)[None, None, None, :]
        return A[F[sig, SR[a, x]], F[tau, SR[one_minus[a], x]]]
    return Gallery(tuple(sections), _gallery_hmodule(n, sections, Q, lam))


def retractions_gallery(n, P, Q, R, iota, pi, budget=None):
    maps, reason = _exact_or_reason(P, Q, R, iota, pi)
    if maps is None:
        return Gallery((), None, reason)
    iota, pi = maps
    rets = [p for p in group_homomorphisms(Q, P, as_budget(budget))
            if all(p[iota[x]] == x for x in range(P.order))]
    if not rets:
        return Gallery((), None, "iota has no additive retraction")
    SP = _scalar_table(P, n)
    A = P.table
    one_minus = np.array([(1 - a) % n for a in range(n)])

    def lam(F):
        # Λ(a,τ,σ)(q) = a·σ(q) + (1-a)·τ(q)
        a = np.arange(n)[:, None, None, None]
        tau = F[None, :, None, :]
        sig = F[None, None, :, :]
        return A[SP[a, sig], SP[one_minus[a], tau]]
    return Gallery(tuple(rets), _gallery_hmodule(n, rets, P, lam))
