"""Isomorphism search and canonical forms for single-carrier table structures.

A structure is described by a list of tables.  Each table dimension either ranges over the
relabeled carrier or over a fixed set (for instance the truss of a module, held pointwise),
and its values lie in the carrier or in a fixed set.  Isomorphisms are bijections of the carrier.
"""
from dataclasses import dataclass
import hashlib
import itertools

import numpy as np

from .errors import StructuralError


@dataclass
class Tab:
    arr: np.ndarray        # n-dimensional table
    rel: tuple             # per dimension: True if indexed by the carrier
    out_rel: bool          # values in the carrier?


@dataclass
class Desc:
    kind: str
    n: int
    tables: list
    fixed: tuple           # data that must match exactly (orders, fixed truss tables)


def _truss_fixed(T):
    return (T.order,) + tuple(int(v) for v in T.heap.ternary) + tuple(int(v) for v in T.mul)


def describe(obj):
    from .heaps import FiniteAbelianGroup, FiniteHeap
    from .trusses import FiniteTruss
    from .modules import FiniteTModule, FiniteTGroup
    from .hmod import FiniteHeapOfModules
    from .ybe import BinaryStructure, YBEPairMap
    R, F = True, False
    if isinstance(obj, FiniteAbelianGroup):
        return Desc("group", obj.order, [Tab(obj.table, (R, R), R)], (obj.order,))
    if isinstance(obj, FiniteHeap):
        return Desc("heap", obj.order, [Tab(obj.t3, (R, R, R), R)], (obj.order,))
    if isinstance(obj, FiniteTruss):
        return Desc("truss", obj.order, [Tab(obj.heap.t3, (R, R, R), R), Tab(obj.m2, (R, R), R)], (obj.order,))
    if isinstance(obj, FiniteTModule):
        return Desc("module", obj.order, [Tab(obj.heap.t3, (R, R, R), R), Tab(obj.a2, (F, R), R)],
                    (obj.order,) + _truss_fixed(obj.truss))
    if isinstance(obj, FiniteTGroup):
        return Desc("tgroup", obj.order, [Tab(obj.group.table, (R, R), R), Tab(obj.a2, (F, R), R)],
                    (obj.order,) + _truss_fixed(obj.truss))
    if isinstance(obj, FiniteHeapOfModules):
        return Desc("hmodule", obj.order, [Tab(obj.heap.t3, (R, R, R), R), Tab(obj.L3, (F, R, R), R)],
                    (obj.order,) + _truss_fixed(obj.truss))
    if isinstance(obj, BinaryStructure):
        return Desc("spindle", obj.order, [Tab(obj.o2, (R, R), R)], (obj.order,))
    if isinstance(obj, YBEPairMap):
        r = obj.r3
        return Desc("ybe", obj.order, [Tab(r[..., 0], (R, R), R), Tab(r[..., 1], (R, R), R)], (obj.order,))
    raise StructuralError(f"no isomorphism notion for {type(obj).__name__}")


def fingerprints(desc):
    """Relabeling-invariant per-element data."""
    n = desc.n
    fp = [[] for _ in range(n)]
    for tab in desc.tables:
        a = tab.arr
        if tab.out_rel:
            cnt = np.bincount(a.ravel(), minlength=n)
            for x in range(n):
                fp[x].append(int(cnt[x]))
        for p, rel in enumerate(tab.rel):
            if not rel:
                continue
            moved = np.moveaxis(a, p, 0).reshape(n, -1)
            for x in range(n):
                row = moved[x]
                if tab.out_rel:
                    fp[x].append(int((row == x).sum()))
                else:
                    fp[x].append(tuple(np.bincount(row, minlength=int(a.max()) + 1 if a.size else 0).tolist()))
    # idempotent-style diagonal when all index dims are carrier dims
    for tab in desc.tables:
        if tab.out_rel and all(tab.rel):
            d = tab.arr.ndim
            diag = tab.arr[tuple([np.arange(n)] * d)]
            for x in range(n):
                fp[x].append(int(diag[x] == x))
    return [tuple(f) for f in fp]


def _entries(desc, order):
    """Checks grouped by the depth at which all their carrier indices are assigned."""
    n = desc.n
    pos = [0] * n
    for i, x in enumerate(order):
        pos[x] = i
    by_depth = [[] for _ in range(n)]
    for tid, tab in enumerate(desc.tables):
        shape = tab.arr.shape
        if not any(tab.rel):
            continue
        strides = [int(np.prod(shape[i + 1:])) for i in range(len(shape))]
        flat = tab.arr.ravel().tolist()
        for flat_i, idx in enumerate(itertools.product(*[range(s) for s in shape])):
            const = 0
            parts = []
            depth = 0
            for dim, (v, rel) in enumerate(zip(idx, tab.rel)):
                if rel:
                    parts.append((v, strides[dim]))
                    depth = max(depth, pos[v])
                else:
                    const += v * strides[dim]
            by_depth[depth].append((tid, const, tuple(parts), flat[flat_i], tab.out_rel))
    return by_depth


def _compatible(dx, dy):
    if dx.kind != dy.kind:
        raise StructuralError(f"cannot compare a {dx.kind} with a {dy.kind}")
    if dx.n != dy.n or dx.fixed != dy.fixed or len(dx.tables) != len(dy.tables):
        return False
    for a, b in zip(dx.tables, dy.tables):
        if a.arr.shape != b.arr.shape or a.rel != b.rel or a.out_rel != b.out_rel:
            return False
        if not any(a.rel) and not np.array_equal(a.arr, b.arr):
            return False
    return True


def find_isomorphisms(X, Y, limit=1):
    """Bijections sigma (list, X element -> Y element) with sigma(X) = Y; at most `limit` (None = all)."""
    dx = X if isinstance(X, Desc) else describe(X)
    dy = Y if isinstance(Y, Desc) else describe(Y)
    if not _compatible(dx, dy):
        return []
    n = dx.n
    if n == 0:
        return [[]]
    fx, fy = fingerprints(dx), fingerprints(dy)
    if sorted(fx) != sorted(fy):
        return []
    cands = {x: [y for y in range(n) if fy[y] == fx[x]] for x in range(n)}
    order = sorted(range(n), key=lambda x: (len(cands[x]), x))
    checks = _entries(dx, order)
    yflat = [t.arr.ravel().tolist() for t in dy.tables]
    sigma = [-1] * n
    used = [False] * n
    found = []

    def undo(trail):
        for x in trail:
            used[sigma[x]] = False
            sigma[x] = -1

    def run_checks(k, trail):
        for tid, const, parts, xv, out_rel in checks[k]:
            yi = const
            for x, s in parts:
                yi += sigma[x] * s
            yv = yflat[tid][yi]
            if out_rel:
                sx = sigma[xv]
                if sx < 0:
                    if used[yv] or fy[yv] != fx[xv]:
                        return False
                    sigma[xv] = yv
                    used[yv] = True
                    trail.append(xv)
                elif sx != yv:
                    return False
            elif xv != yv:
                return False
        return True

    def rec(k):
        if k == n:
            found.append(list(sigma))
            return limit is not None and len(found) >= limit
        x = order[k]
        if sigma[x] >= 0:
            trail = []
            if run_checks(k, trail) and rec(k + 1):
                return True
            undo(trail)
            return False
        for y in cands[x]:
            if used[y]:
                continue
            sigma[x] = y
            used[y] = True
            trail = [x]
            if run_checks(k, trail) and rec(k + 1):
                return True
            undo(trail)
        return False

    rec(0)
    return found


def find_isomorphism(X, Y):
    found = find_isomorphisms(X, Y, limit=1)
    return found[0] if found else None


def are_isomorphic(X, Y, truss_automorphisms=False):
    """(verdict, witness).  For modules and heaps of modules the truss is held pointwise unless
    truss_automorphisms is set, in which case the witness is (truss automorphism, carrier bijection)."""
    if type(X) is not type(Y):
        raise StructuralError(f"cannot compare {type(X).__name__} with {type(Y).__name__}")
    if truss_automorphisms and hasattr(X, "truss"):
        if X.truss.order != Y.truss.order:
            return False, None
        for alpha in find_isomorphisms(X.truss, Y.truss, limit=None):
            Xa = retruss(X, Y.truss, alpha)
            sigma = find_isomorphism(Xa, Y)
            if sigma is not None:
                return True, (tuple(alpha), tuple(sigma))
        return False, None
    sigma = find_isomorphism(X, Y)
    return sigma is not None, None if sigma is None else tuple(sigma)


def retruss(X, T2, alpha):
    """Transport a module-like structure along a truss isomorphism alpha: T -> T2."""
    inv = np.argsort(np.asarray(alpha))
    from .modules import FiniteTModule, FiniteTGroup
    from .hmod import FiniteHeapOfModules
    if isinstance(X, FiniteHeapOfModules):
        return FiniteHeapOfModules(T2, X.heap, X.L3[inv])
    if isinstance(X, FiniteTModule):
        return FiniteTModule(T2, X.heap, X.a2[inv])
    if isinstance(X, FiniteTGroup):
        return FiniteTGroup(X.group, T2, X.a2[inv])
    raise StructuralError("no truss to transport")


def relabel(obj, perm):
    """The structure with element x renamed perm[x]."""
    from .heaps import FiniteAbelianGroup, FiniteHeap
    from .trusses import FiniteTruss
    from .modules import FiniteTModule, FiniteTGroup
    from .hmod import FiniteHeapOfModules
    from .ybe import BinaryStructure, YBEPairMap
    p = np.asarray(perm, dtype=np.int64)
    q = np.argsort(p)
    if isinstance(obj, FiniteAbelianGroup):
        return FiniteAbelianGroup(obj.order, p[obj.table[np.ix_(q, q)]], int(p[obj.zero]), p[obj.neg[q]])
    if isinstance(obj, FiniteHeap):
        return FiniteHeap(obj.order, p[obj.t3[np.ix_(q, q, q)]])
    if isinstance(obj, FiniteTruss):
        return FiniteTruss(relabel(obj.heap, p), p[obj.m2[np.ix_(q, q)]])
    if isinstance(obj, FiniteTModule):
        return FiniteTModule(obj.truss, relabel(obj.heap, p), p[obj.a2[:, q]])
    if isinstance(obj, FiniteTGroup):
        return FiniteTGroup(relabel(obj.group, p), obj.truss, p[obj.a2[:, q]])
    if isinstance(obj, FiniteHeapOfModules):
        return FiniteHeapOfModules(obj.truss, relabel(obj.heap, p), p[obj.L3[:, q][:, :, q]])
    if isinstance(obj, BinaryStructure):
        return BinaryStructure.from_table(obj.order, p[obj.o2[np.ix_(q, q)]])
    if isinstance(obj, YBEPairMap):
        return YBEPairMap(obj.order, p[obj.r3[np.ix_(q, q)]])
    raise StructuralError(f"cannot relabel {type(obj).__name__}")


@dataclass(frozen=True)
class CanonicalForm:
    kind: str
    orders: tuple
    key: tuple             # fixed data followed by the lexicographically minimal relabeled tables
    fingerprint: tuple
    relabeling: tuple      # one bijection achieving the minimum (old -> new)

    @property
    def digest(self):
        h = hashlib.sha256(repr((self.kind, self.key)).encode()).hexdigest()
        return h[:16]


def _shells(desc):
    n = desc.n
    shells = [[] for _ in range(n)]
    for tid, tab in enumerate(desc.tables):
        if not any(tab.rel):
            continue
        shape = tab.arr.shape
        strides = [int(np.prod(shape[i + 1:])) for i in range(len(shape))]
        for idx in itertools.product(*[range(s) for s in shape]):
            sh = max(v for v, r in zip(idx, tab.rel) if r)
            shells[sh].append((tid, tuple((v, strides[d], r) for d, (v, r) in enumerate(zip(idx, tab.rel))),
                               tab.out_rel))
    return shells


def canonical_form(obj):
    desc = obj if isinstance(obj, Desc) else describe(obj)
    n = desc.n
    fixed = tuple(desc.fixed) + tuple(
        int(v) for t in desc.tables if not any(t.rel) for v in t.arr.ravel())
    fp = tuple(sorted(fingerprints(desc))) if n else ()
    if n == 0:
        return CanonicalForm(desc.kind, (0,), fixed, fp, ())
    shells = _shells(desc)
    xflat = [t.arr.ravel().tolist() for t in desc.tables]
    inv = []                # new label -> old element
    lab = [-1] * n          # old element -> new label
    best = [None, None]     # key list, relabeling

    def prefix():
        out = []
        for d in range(len(inv)):
            for tid, dims, out_rel in shells[d]:
                oi = 0
                for v, s, r in dims:
                    oi += (inv[v] if r else v) * s
                xv = xflat[tid][oi]
                if out_rel:
                    out.append(lab[xv] if lab[xv] >= 0 else ~xv)    # negative marks an unlabeled value
                else:
                    out.append(xv)
        return out

    def rec():
        d = len(inv)
        seq = prefix()
        bkey = best[0]
        better = bkey is None
        forced = None
        for i, v in enumerate(seq):
            if v < 0:
                forced = ~v
                if not better and bkey[i] < d:
                    return
                break
            if not better:
                if v < bkey[i]:
                    better = True
                elif v > bkey[i]:
                    return
        if d == n:
            if bkey is None or seq < bkey:
                best[0] = seq
                best[1] = tuple(lab)
            return
        choices = [forced] if forced is not None else [x for x in range(n) if lab[x] < 0]
        for x in choices:
            lab[x] = d
            inv.append(x)
            rec()
            inv.pop()
            lab[x] = -1

    rec()
    return CanonicalForm(desc.kind, (n,), fixed + tuple(best[0]), fp, best[1])


def automorphisms(obj):
    return find_isomorphisms(obj, obj, limit=None)
