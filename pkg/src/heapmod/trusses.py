"""Finite trusses and rings: validation, T(R), endomorphism trusses, paragons, ideals, quotients."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractViolation, PreconditionError, StructuralError
from .heaps import (FiniteAbelianGroup, FiniteHeap, as_budget, heap_from_group, heap_morphisms,
                    check_closed, subheap_relation)
from .report import Check, ValidationReport, first_true, law
from .tables import Frozen, as_index, as_mask, as_table, encode_subset


@dataclass(frozen=True, eq=False)
class FiniteTruss(Frozen):
    heap: FiniteHeap
    mul: np.ndarray

    def __post_init__(self):
        n = self.heap.order
        object.__setattr__(self, "mul", as_table(self.mul, n * n, max(n, 1), "mul"))

    @property
    def order(self):
        return self.heap.order

    @property
    def m2(self):
        return self.mul.reshape(self.order, self.order)

    def times(self, a, b):
        return int(self.mul[a * self.order + b])

    def bracket(self, a, b, c):
        return self.heap.bracket(a, b, c)

    @cached_property
    def report(self):
        return validate_truss(self.heap, self.mul)

    def require_valid(self):
        self.report.require()
        return self

    # unit and absorber are read from the validation record only
    @property
    def unit(self):
        return self.report.info["unit"]

    @property
    def absorber(self):
        return self.report.info["absorber"]

    @property
    def commutative(self):
        return bool((self.m2 == self.m2.T).all())


def _neutral(M):
    n = M.shape[0]
    x = np.arange(n)
    for u in range(n):
        if (M[u] == x).all() and (M[:, u] == x).all():
            return u
    return None


def _absorbing(M):
    n = M.shape[0]
    for z in range(n):
        if (M[z] == z).all() and (M[:, z] == z).all():
            return z
    return None


def validate_truss(heap, mul):
    if isinstance(heap, FiniteTruss):
        heap, mul = heap.heap, heap.mul
    T = FiniteTruss(heap, mul) if not isinstance(mul, FiniteTruss) else mul
    n = heap.order
    r = ValidationReport("truss", info={"order": n})
    hr = heap.report
    r.checks.append(Check("heap", hr.valid, None if hr.valid else hr.failures[0].witness,
                          "" if hr.valid else hr.failures[0].name + ": " + hr.failures[0].detail))
    M = T.m2
    H = heap.t3
    x = np.arange(n)
    a4 = x[:, None, None, None]
    b4, c4, d4 = x[None, :, None, None], x[None, None, :, None], x[None, None, None, :]
    r.checks.append(law("associativity", M[M[:, :, None], x[None, None, :]], M[x[:, None, None], M[None, :, :]],
                        lambda w: f"({w[0]}*{w[1]})*{w[2]} = {M[M[w[0], w[1]], w[2]]} but "
                                  f"{w[0]}*({w[1]}*{w[2]}) = {M[w[0], M[w[1], w[2]]]}"))
    r.checks.append(law("left distributivity", M[a4, H[b4, c4, d4]], H[M[a4, b4], M[a4, c4], M[a4, d4]],
                        lambda w: f"{w[0]}*[{w[1]},{w[2]},{w[3]}] = {M[w[0], H[w[1], w[2], w[3]]]} but "
                                  f"[{w[0]}*{w[1]},{w[0]}*{w[2]},{w[0]}*{w[3]}] = "
                                  f"{H[M[w[0], w[1]], M[w[0], w[2]], M[w[0], w[3]]]}"))
    r.checks.append(law("right distributivity", M[H[b4, c4, d4], a4], H[M[b4, a4], M[c4, a4], M[d4, a4]],
                        lambda w: f"[{w[1]},{w[2]},{w[3]}]*{w[0]} = {M[H[w[1], w[2], w[3]], w[0]]} but "
                                  f"[{w[1]}*{w[0]},{w[2]}*{w[0]},{w[3]}*{w[0]}] = "
                                  f"{H[M[w[1], w[0]], M[w[2], w[0]], M[w[3], w[0]]]}"))
    r.info["unit"] = _neutral(M)
    r.info["absorber"] = _absorbing(M)
    return r


@dataclass(frozen=True, eq=False)
class FiniteRing(Frozen):
    group: FiniteAbelianGroup
    mul: np.ndarray
    unit: int | None = None

    def __post_init__(self):
        n = self.group.order
        object.__setattr__(self, "mul", as_table(self.mul, n * n, n, "mul"))
        if self.unit is not None:
            object.__setattr__(self, "unit", as_index(self.unit, n, "unit"))

    @property
    def order(self):
        return self.group.order

    @property
    def zero(self):
        return self.group.zero

    @property
    def m2(self):
        return self.mul.reshape(self.order, self.order)

    @cached_property
    def report(self):
        return validate_ring(self)

    @classmethod
    def zmod(cls, n):
        a = np.arange(n)
        return cls(FiniteAbelianGroup.cyclic(n), (a[:, None] * a[None, :]) % n, 1 % n)

    @classmethod
    def zero_ring(cls, G):
        return cls(G, np.full(G.order ** 2, G.zero), None if G.order > 1 else G.zero)

    def product(self, other):
        n, m = self.order, other.order
        a, b = self.m2, other.m2
        mul = (a[:, None, :, None] * m + b[None, :, None, :]).reshape(n * m, n * m)
        unit = None
        if self.unit is not None and other.unit is not None:
            unit = self.unit * m + other.unit
        return FiniteRing(self.group.product(other.group), mul, unit)


def validate_ring(R):
    r = ValidationReport("ring", info={"order": R.order})
    gr = R.group.report
    r.checks.append(Check("additive group", gr.valid, None, "" if gr.valid else gr.failures[0].detail))
    A, M = R.group.table, R.m2
    x = np.arange(R.order)
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    r.checks.append(law("associativity", M[M[a, b], c], M[a, M[b, c]]))
    r.checks.append(law("left distributivity", M[a, A[b, c]], A[M[a, b], M[a, c]]))
    r.checks.append(law("right distributivity", M[A[b, c], a], A[M[b, a], M[c, a]]))
    if R.unit is not None:
        r.checks.append(law("unit", np.stack([M[R.unit], M[:, R.unit]]), np.stack([x, x])))
    return r


def truss_from_ring(R):
    R.report.require()
    T = FiniteTruss(heap_from_group(R.group), R.mul)
    T.require_valid()
    if T.absorber != R.zero:
        raise ContractViolation("ring zero is not the absorber of T(R)")
    return T


def codes(rows, base):
    """Integer code of each row; lexicographic order of rows equals numeric order of codes."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[-1] == 0:
        return np.zeros(rows.shape[:-1], dtype=np.int64)
    w = base ** np.arange(rows.shape[-1] - 1, -1, -1, dtype=np.int64)
    return rows @ w


@dataclass(frozen=True)
class FunctionSpace:
    """A finite list of maps into a heap, closed under the pointwise bracket."""
    maps: np.ndarray       # (k, domain) sorted lexicographically
    heap: FiniteHeap       # pointwise bracket on the indices 0..k-1

    def index(self, values):
        hits = np.flatnonzero((self.maps == np.asarray(values)).all(axis=1))
        if hits.size == 0:
            raise KeyError(tuple(values))
        return int(hits[0])


def lookup_rows(maps, base, rows):
    """Indices of rows inside the sorted list maps; raises if a row is missing."""
    keys = codes(maps, base)
    q = codes(rows, base)
    pos = np.searchsorted(keys, q)
    pos = np.minimum(pos, max(len(keys) - 1, 0))
    if len(keys) == 0 or not (keys[pos] == q).all():
        raise ContractViolation("set of maps is not closed")
    return pos


def function_space(maps, codomain):
    """Pointwise heap on a set of maps (rows) into the codomain heap."""
    maps = np.array(sorted(tuple(int(v) for v in m) for m in maps), dtype=np.int64).reshape(len(maps), -1)
    k = maps.shape[0]
    base = max(codomain.order, 1)
    T = codomain.t3
    br = T[maps[:, None, None, :], maps[None, :, None, :], maps[None, None, :, :]]
    idx = lookup_rows(maps, base, br.reshape(-1, maps.shape[1])) if k else np.zeros(0, dtype=np.int64)
    return FunctionSpace(maps, FiniteHeap(k, idx))


def composition_table(space, base):
    """mul[f, g] = index of f o g for endomaps in the space."""
    F = space.maps
    k = F.shape[0]
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    comp = F[:, F]                         # comp[f, g, x] = F[f, F[g, x]]
    return lookup_rows(F, base, comp.reshape(-1, F.shape[1]))


@dataclass(frozen=True)
class EndoTruss:
    truss: FiniteTruss
    maps: np.ndarray

    def index(self, values):
        hits = np.flatnonzero((self.maps == np.asarray(values)).all(axis=1))
        return int(hits[0])


def endomorphism_truss(H, budget=None):
    H.require_valid()
    if H.order == 0:
        raise PreconditionError("endomorphism truss needs a non-empty heap")
    maps = heap_morphisms(H, H, as_budget(budget))
    space = function_space(maps, H)
    T = FiniteTruss(space.heap, composition_table(space, H.order))
    T.require_valid()
    ident = space.index(range(H.order))
    if T.unit != ident:
        raise ContractViolation("identity is not the unit of E(H)")
    return EndoTruss(T, space.maps)


def is_paragon(T, P):
    """(True, None), or (False, witness).  Witness tuples start with the failing condition."""
    n = T.order
    mask = as_mask(n, P)
    if not mask.any():
        return False, ("empty",)
    w = check_closed(T.heap, mask)
    if w is not None:
        return False, ("bracket",) + w
    H, M = T.heap.t3, T.m2
    p = np.flatnonzero(mask)
    t = np.arange(n)
    # [tp, tq, q] and [pt, qt, q] for (t, p, q)
    left = H[M[t[:, None, None], p[None, :, None]], M[t[:, None, None], p[None, None, :]], p[None, None, :]]
    right = H[M[p[None, :, None], t[:, None, None]], M[p[None, None, :], t[:, None, None]], p[None, None, :]]
    for name, vals in (("left", left), ("right", right)):
        w = first_true(~mask[vals])
        if w is not None:
            return False, (name, int(w[0]), int(p[w[1]]), int(p[w[2]]))
    return True, None


def ideal_witness(T, I, side="two-sided"):
    if side not in ("left", "right", "two-sided"):
        raise StructuralError(f"unknown ideal side {side!r}")
    n = T.order
    mask = as_mask(n, I)
    if not mask.any():
        return ("empty",)
    w = check_closed(T.heap, mask)
    if w is not None:
        return ("bracket",) + w
    M = T.m2
    xs = np.flatnonzero(mask)
    if side in ("left", "two-sided"):
        w = first_true(~mask[M[:, xs]])
        if w is not None:
            return ("left", w[0], int(xs[w[1]]))
    if side in ("right", "two-sided"):
        w = first_true(~mask[M[xs, :]].T)
        if w is not None:
            return ("right", w[0], int(xs[w[1]]))
    return None


def is_ideal(T, I, side="two-sided"):
    return ideal_witness(T, I, side) is None


def is_subtruss(T, S):
    """Closed under bracket and product; the empty set counts."""
    mask = as_mask(T.order, S)
    if check_closed(T.heap, mask) is not None:
        return False
    xs = np.flatnonzero(mask)
    return bool(mask[T.m2[np.ix_(xs, xs)]].all())


SUBSET_KINDS = ("subheap", "subtruss", "paragon", "left-ideal", "right-ideal", "two-sided-ideal")


@dataclass(frozen=True)
class SubsetFlag:
    subset: object    # bitmask int (order <= 64) or sorted tuple
    kind: str


def subset_flags(T, S):
    mask = as_mask(T.order, S)
    enc = encode_subset(T.order, mask)
    tests = {
        "subheap": check_closed(T.heap, mask) is None,
        "subtruss": is_subtruss(T, mask),
        "paragon": is_paragon(T, mask)[0],
        "left-ideal": is_ideal(T, mask, "left"),
        "right-ideal": is_ideal(T, mask, "right"),
        "two-sided-ideal": is_ideal(T, mask, "two-sided"),
    }
    return [SubsetFlag(enc, k) for k in SUBSET_KINDS if tests[k]]


def quotient_by_paragon(T, P):
    T.require_valid()
    good, w = is_paragon(T, P)
    if not good:
        raise PreconditionError(f"not a paragon: {w}", witness=w)
    q = subheap_relation(T.heap, P)
    lab = np.array(q.labels)
    reps = np.array([c[0] for c in q.classes])
    Q = lab[T.m2[np.ix_(reps, reps)]]
    bad = first_true(lab[T.m2] != Q[lab[:, None], lab[None, :]])
    if bad is not None:
        raise ContractViolation("paragon relation is not a truss congruence", witness=bad)
    out = FiniteTruss(q.quotient, Q)
    out.require_valid()
    return out, q


def truss_morphisms(T, T2, budget=None):
    out = []
    M, M2 = T.m2, T2.m2
    for f in heap_morphisms(T.heap, T2.heap, budget):
        fa = np.array(f, dtype=np.int64)
        if T.order == 0 or (fa[M] == M2[fa[:, None], fa[None, :]]).all():
            out.append(f)
    return out


def relabel_truss(T, perm):
    p = np.asarray(perm)
    inv = np.argsort(p)
    H = FiniteHeap(T.order, p[T.heap.t3[np.ix_(inv, inv, inv)]])
    return FiniteTruss(H, p[T.m2[np.ix_(inv, inv)]])


def left_projection_truss(H):
    n = H.order
    return FiniteTruss(H, np.repeat(np.arange(n), n))


def right_projection_truss(H):
    n = H.order
    return FiniteTruss(H, np.tile(np.arange(n), n))


def affine_conjugate_truss(n, scale, shift):
    """Z/n ring product transported along x -> scale*x + shift (scale a unit mod n)."""
    R = FiniteRing.zmod(n)
    H = heap_from_group(R.group)
    fwd = [(scale * x + shift) % n for x in range(n)]
    return relabel_truss(FiniteTruss(H, R.mul), fwd)


def star_truss():
    """The one-element truss."""
    return FiniteTruss(FiniteHeap(1, [0]), [0])


def shift_truss(n):
    """Z/n with m·n = m + n: a truss without absorber whose regular module has no absorber."""
    x = np.arange(n)
    return FiniteTruss(heap_from_group(FiniteAbelianGroup.cyclic(n)), (x[:, None] + x[None, :]) % n)


def ring_from_truss(T):
    """The ring on the retract at the absorber; trusses of the form T(R) are exactly those with one."""
    z = T.absorber
    if z is None:
        raise PreconditionError("truss has no absorber, so it does not come from a ring")
    from .heaps import retract
    R = FiniteRing(retract(T.heap, z), T.mul, T.unit)
    R.report.require()
    return R
