"""Finite abelian groups and heaps: validation, retracts, translations, congruences, morphisms."""
from dataclasses import dataclass
from functools import cached_property
import itertools

import numpy as np

from .errors import AxiomError, BudgetExceeded, ContractViolation, PreconditionError, StructuralError
from .report import Check, ValidationReport, first_true, law
from .tables import Frozen, as_index, as_mask, as_table, elements

# Above this order associativity is checked through the retract instead of the n^5 sweep.
FULL_ASSOC_LIMIT = 12


@dataclass(frozen=True, eq=False)
class FiniteAbelianGroup(Frozen):
    order: int
    add: np.ndarray
    zero: int
    neg: np.ndarray

    def __post_init__(self):
        n = int(self.order)
        if n < 1:
            raise StructuralError("a group has at least one element")
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "add", as_table(self.add, n * n, n, "add"))
        object.__setattr__(self, "zero", as_index(self.zero, n, "zero"))
        object.__setattr__(self, "neg", as_table(self.neg, n, n, "neg"))

    @property
    def table(self):
        return self.add.reshape(self.order, self.order)

    def plus(self, a, b):
        return int(self.add[a * self.order + b])

    def minus(self, a, b):
        return int(self.add[a * self.order + int(self.neg[b])])

    def times(self, k, x):
        """k-fold sum of x (k >= 0)."""
        acc = self.zero
        for _ in range(k):
            acc = self.plus(acc, x)
        return acc

    @cached_property
    def report(self):
        return validate_group(self)

    @classmethod
    def from_table(cls, add, order=None):
        """Build from an addition table alone; zero and negation are read off."""
        arr = np.array(add, dtype=np.int64)
        n = int(order) if order is not None else int(round(np.sqrt(arr.size)))
        t = as_table(arr, n * n, n, "add").reshape(n, n)
        zeros = [z for z in range(n) if (t[z] == np.arange(n)).all()]
        if not zeros:
            raise AxiomError("addition table has no neutral element")
        z = zeros[0]
        neg = []
        for x in range(n):
            inv = np.flatnonzero(t[x] == z)
            if inv.size == 0:
                raise AxiomError(f"element {x} has no inverse")
            neg.append(int(inv[0]))
        return cls(n, t, z, neg)

    @classmethod
    def cyclic(cls, n):
        a = np.arange(n)
        return cls(n, (a[:, None] + a[None, :]) % n, 0, (-a) % n)

    @classmethod
    def from_decomposition(cls, orders):
        """Direct sum of cyclic groups; element index is mixed-radix with the first factor most significant."""
        g = cls.cyclic(1)
        for k in orders:
            g = g.product(cls.cyclic(k)) if g.order > 1 else cls.cyclic(k)
        return g

    def product(self, other):
        n, m = self.order, other.order
        a, b = self.table, other.table
        # (x1,y1)+(x2,y2) with index x*m+y
        add = (a[:, None, :, None] * m + b[None, :, None, :]).reshape(n * m, n * m)
        neg = (self.neg[:, None] * m + other.neg[None, :]).ravel()
        return FiniteAbelianGroup(n * m, add, self.zero * m + other.zero, neg)


def validate_group(G):
    n = G.order
    A = G.table
    x = np.arange(n)
    r = ValidationReport("group")
    r.checks.append(law("associativity", A[A[:, :, None], x[None, None, :]],
                        A[x[:, None, None], A[None, :, :]],
                        lambda w: f"({w[0]}+{w[1]})+{w[2]} != {w[0]}+({w[1]}+{w[2]})"))
    r.checks.append(law("commutativity", A, A.T, lambda w: f"{w[0]}+{w[1]} != {w[1]}+{w[0]}"))
    r.checks.append(law("identity", A[G.zero], x, lambda w: f"zero+{w[0]} != {w[0]}"))
    r.checks.append(law("inverse", A[x, G.neg], np.full(n, G.zero),
                        lambda w: f"{w[0]}+neg({w[0]}) != zero"))
    return r


@dataclass(frozen=True, eq=False)
class FiniteHeap(Frozen):
    order: int
    ternary: np.ndarray

    def __post_init__(self):
        n = int(self.order)
        if n < 0:
            raise StructuralError("negative order")
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "ternary", as_table(self.ternary, n ** 3, max(n, 1), "ternary"))

    @property
    def t3(self):
        n = self.order
        return self.ternary.reshape(n, n, n)

    def bracket(self, a, b, c):
        n = self.order
        return int(self.ternary[(a * n + b) * n + c])

    @cached_property
    def report(self):
        return validate_heap(self)

    def require_valid(self):
        self.report.require()
        return self


def empty_heap():
    return FiniteHeap(0, [])


def _assoc_sweep(T, start=0):
    """Full associativity sweep, one leading index at a time; lowest witness or None."""
    n = T.shape[0]
    inner = T  # inner[c,d,e] = [c,d,e]
    for a in range(start, n):
        lhs = T[a][:, inner]                  # [a,b,[c,d,e]]  shape (b,c,d,e)
        rhs = T[T[a][:, :, None, None], np.arange(n)[None, None, :, None], np.arange(n)[None, None, None, :]]
        w = first_true(lhs != rhs)
        if w is not None:
            return (a,) + w, int(lhs[w]), int(rhs[w])
    return None


def _assoc_via_retract(T):
    """For a Mal'cev abelian table: associative iff it is the heap of its retract at 0."""
    n = T.shape[0]
    add = T[:, 0, :]
    x = np.arange(n)
    if not (add[add[:, :, None], x[None, None, :]] == add[x[:, None, None], add[None, :, :]]).all():
        return False
    neg = T[0, :, 0]
    if not (add[x, neg] == 0).all():
        return False
    return bool((T == add[add[:, neg][:, :, None], x[None, None, :]]).all())


def validate_heap(table, order=None):
    H = table if isinstance(table, FiniteHeap) else FiniteHeap(order, table)
    n = H.order
    T = H.t3
    r = ValidationReport("heap", info={"order": n})
    x = np.arange(n)
    # Mal'cev: [a,b,b] = a and [b,b,a] = a, witnesses over (a,b)
    left = T[x[:, None], x[None, :], x[None, :]]
    right = T[x[None, :], x[None, :], x[:, None]]
    bad = (left != x[:, None]) | (right != x[:, None])
    w = first_true(bad)
    if w is None:
        malcev = Check("malcev", True)
    else:
        a, b = w
        if left[a, b] != a:
            detail = f"[a,b,b] = [{a},{b},{b}] = {left[a, b]} != {a}"
        else:
            detail = f"[b,b,a] = [{b},{b},{a}] = {right[a, b]} != {a}"
        malcev = Check("malcev", False, w, detail)
    abelian = law("abelian", T, T.transpose(2, 1, 0),
                  lambda w: f"[{w[0]},{w[1]},{w[2]}] = {T[w]} but [{w[2]},{w[1]},{w[0]}] = {T[w[2], w[1], w[0]]}")
    if n <= FULL_ASSOC_LIMIT or not (malcev.passed and abelian.passed) or not _assoc_via_retract(T):
        found = _assoc_sweep(T)
    else:
        found = None
    if found is None:
        assoc = Check("associativity", True)
    else:
        (a, b, c, d, e), lhs, rhs = found
        assoc = Check("associativity", False, (a, b, c, d, e),
                      f"[{a},{b},[{c},{d},{e}]] = {lhs} but [[{a},{b},{c}],{d},{e}] = {rhs}")
    r.checks += [assoc, malcev, abelian]
    return r


def heap_from_group(G):
    G.report.require()
    n = G.order
    A = G.table
    diff = A[:, G.neg]                       # a - b
    return FiniteHeap(n, A[diff[:, :, None], np.arange(n)[None, None, :]])


def retract(H, e):
    H.require_valid()
    if H.order == 0:
        raise PreconditionError("the empty heap has no retract")
    e = as_index(e, H.order, "basepoint")
    T = H.t3
    return FiniteAbelianGroup(H.order, T[:, e, :], e, T[e, :, e])


@dataclass(frozen=True, eq=False)
class Translation(Frozen):
    heap: FiniteHeap
    a: int
    b: int
    perm: tuple

    def __call__(self, x):
        return self.perm[x]


def translation(H, a, b):
    n = H.order
    a = as_index(a, n, "a")
    b = as_index(b, n, "b")
    return Translation(H, a, b, tuple(int(v) for v in H.t3[:, a, b]))


@dataclass(frozen=True, eq=False)
class TranslationGroup(Frozen):
    heap: FiniteHeap
    group: FiniteAbelianGroup
    perms: tuple           # perms[i] is the permutation of element i of the group
    pair_index: np.ndarray  # pair_index[a, b] = index of tau_a^b

    def index(self, perm):
        return self.perms.index(tuple(perm))


def translation_group(H):
    H.require_valid()
    n = H.order
    if n == 0:
        raise PreconditionError("the empty heap has no translation group")
    T = H.t3
    all_perms = {(a, b): tuple(int(v) for v in T[:, a, b]) for a in range(n) for b in range(n)}
    perms = tuple(sorted(set(all_perms.values())))
    lookup = {p: i for i, p in enumerate(perms)}
    pair_index = np.array([[lookup[all_perms[a, b]] for b in range(n)] for a in range(n)], dtype=np.int64)
    k = len(perms)
    add = [[lookup[tuple(p[x] for x in q)] for q in perms] for p in perms]
    ident = lookup[tuple(range(n))]
    inv = [lookup[tuple(sorted(range(n), key=lambda x: p[x]))] for p in perms]
    G = FiniteAbelianGroup(k, add, ident, inv)
    G.report.require()
    return TranslationGroup(H, G, perms, pair_index)


def trans_map(f, H, H2):
    """The induced map Trans(H) -> Trans(H2), tau_a^b -> tau_f(a)^f(b); checked well defined and additive."""
    tg, tg2 = translation_group(H), translation_group(H2)
    n = H.order
    img = [-1] * tg.group.order
    for a in range(n):
        for b in range(n):
            i = int(tg.pair_index[a, b])
            j = int(tg2.pair_index[f[a], f[b]])
            if img[i] not in (-1, j):
                raise ContractViolation("Trans(f) is not well defined", witness=(a, b))
            img[i] = j
    A, B = tg.group.table, tg2.group.table
    img = np.array(img)
    bad = first_true(img[A] != B[img[:, None], img[None, :]])
    if bad is not None:
        raise ContractViolation("Trans(f) is not additive", witness=bad)
    return img


@dataclass(frozen=True)
class SubheapQuotient:
    labels: tuple          # class label of each element
    classes: tuple         # tuple of sorted tuples
    quotient: FiniteHeap


def check_closed(H, mask):
    """First triple of S-elements whose bracket leaves S, or None."""
    S = np.flatnonzero(mask)
    if S.size == 0:
        return None
    T = H.t3
    inside = mask[T[np.ix_(S, S, S)]]
    w = first_true(~inside)
    if w is None:
        return None
    return tuple(int(S[i]) for i in w)


def subheap_relation(H, S):
    H.require_valid()
    n = H.order
    if n == 0:
        raise PreconditionError("the empty heap has no sub-heap relation")
    mask = as_mask(n, S)
    if not mask.any():
        raise PreconditionError("sub-heap relation needs a non-empty subset")
    w = check_closed(H, mask)
    if w is not None:
        raise PreconditionError(f"subset not closed: [{w[0]},{w[1]},{w[2]}] = {H.bracket(*w)} is outside",
                                witness=w)
    T = H.t3
    s = np.flatnonzero(mask)
    rel = mask[T[:, :, s]].all(axis=2)
    labels = [-1] * n
    classes = []
    for x in range(n):
        if labels[x] < 0:
            cls = [y for y in range(n) if rel[x, y]]
            for y in cls:
                if labels[y] >= 0 or not rel[y, x]:
                    raise ContractViolation("sub-heap relation is not an equivalence", witness=(x, y))
                labels[y] = len(classes)
            classes.append(tuple(cls))
    lab = np.array(labels)
    reps = np.array([c[0] for c in classes])
    Q = lab[T[np.ix_(reps, reps, reps)]]
    bad = first_true(lab[T] != Q[lab[:, None, None], lab[None, :, None], lab[None, None, :]])
    if bad is not None:
        raise ContractViolation("sub-heap relation is not a congruence", witness=bad)
    quotient = FiniteHeap(len(classes), Q)
    quotient.require_valid()
    return SubheapQuotient(tuple(labels), tuple(classes), quotient)


def is_heap_morphism(f, H, H2):
    """(True, None) or (False, lowest violating triple)."""
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (H.order,):
        raise StructuralError(f"map has {f.size} values, source has {H.order} elements")
    if f.size and (f.min() < 0 or f.max() >= H2.order):
        raise StructuralError("map value outside target")
    w = first_true(f[H.t3] != H2.t3[f[:, None, None], f[None, :, None], f[None, None, :]])
    return w is None, w


def _subgroup_from(G, S):
    """Is the set S (mask) a subgroup of G?"""
    if not S[G.zero]:
        return False
    idx = np.flatnonzero(S)
    return bool(S[G.table[np.ix_(idx, idx)]].all() and S[G.neg[idx]].all())


def coset_test(G, S):
    G.report.require()
    mask = as_mask(G.order, S)
    H = heap_from_group(G)
    # sub-heap characterization
    as_subheap = bool(mask.any()) and check_closed(H, mask) is None
    # coset characterization: S - g is a subgroup for some g
    as_coset = False
    for g in range(G.order):
        shifted = np.zeros(G.order, dtype=bool)
        shifted[G.table[np.flatnonzero(mask), G.neg[g]]] = True
        if _subgroup_from(G, shifted):
            as_coset = True
            break
    if as_subheap != as_coset:
        raise ContractViolation("coset and sub-heap characterizations disagree", witness=tuple(elements(mask)))
    return as_subheap


def generators(G):
    """Greedy generating set: smallest element not yet in the span, repeatedly."""
    span = np.zeros(G.order, dtype=bool)
    span[G.zero] = True
    gens = []
    for x in range(G.order):
        if not span[x]:
            gens.append(x)
            span = _closure(G, span, x)
    return gens


def _closure(G, span, x):
    new = span.copy()
    frontier = list(np.flatnonzero(span))
    while frontier:
        y = G.plus(int(frontier.pop()), x)
        if not new[y]:
            new[y] = True
            frontier.append(y)
    return new


class Budget:
    """Counts candidate evaluations against a hard cap."""

    def __init__(self, limit=10 ** 7):
        self.limit = limit
        self.used = 0

    def spend(self, k=1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} candidate evaluations exceeded")


def as_budget(budget):
    if isinstance(budget, Budget):
        return budget
    return Budget(budget if budget is not None else 10 ** 7)


def group_homomorphisms(G, G2, budget=None):
    """All additive maps G -> G2 as value tuples, sorted."""
    budget = as_budget(budget)
    gens = generators(G)
    n = G.order
    A = G.table
    out = []
    for images in itertools.product(range(G2.order), repeat=len(gens)):
        budget.spend()
        f = [-1] * n
        f[G.zero] = G2.zero
        stack = [G.zero]
        good = True
        while stack and good:
            x = stack.pop()
            for g, h in zip(gens, images):
                y = int(A[x, g])
                v = G2.plus(f[x], h)
                if f[y] < 0:
                    f[y] = v
                    stack.append(y)
                elif f[y] != v:
                    good = False
                    break
        if good:
            out.append(tuple(f))
    return sorted(out)


def heap_morphisms(H, H2, budget=None):
    """All heap morphisms H -> H2 via retracts: an additive map followed by a translation."""
    budget = as_budget(budget)
    if H.order == 0:
        return [()]
    if H2.order == 0:
        return []
    G, G2 = retract(H, 0), retract(H2, 0)
    homs = group_homomorphisms(G, G2, budget)
    T2 = H2.t3
    out = []
    for phi in homs:
        phi = np.array(phi)
        for c in range(H2.order):
            budget.spend()
            out.append(tuple(int(v) for v in T2[phi, 0, c]))
    return sorted(out)


def heap_isomorphic_relabel(H, perm):
    """Relabel a heap: element x becomes perm[x]."""
    p = np.asarray(perm)
    inv = np.argsort(p)
    T = H.t3
    return FiniteHeap(H.order, p[T[np.ix_(inv, inv, inv)]])
