"""Theorem suites: every in-scope statement as an exhaustive check over a corpus.

Each suite selects items from a corpus and checks them one at a time; a failure records what
went wrong and a witness.  Library contract violations raised during a check count as failures.
"""
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import affine as aff
from . import hmod as hm_
from . import ybe
from .errors import HeapModError
from .heaps import (FiniteAbelianGroup, FiniteHeap, check_closed, coset_test, empty_heap, group_homomorphisms,
                    heap_from_group, heap_morphisms, is_heap_morphism, retract, subheap_relation, trans_map,
                    translation_group)
from .hmod import FiniteHeapOfModules
from .iso import find_isomorphism, find_isomorphisms
from .modules import (FiniteTGroup, FiniteTModule, absorbers, annihilator, coset_induced_submodule_test,
                      induced_action, module_morphisms, module_to_tgroup, regular_module, stabilizer,
                      tgroup_module_roundtrip, tgroup_to_module)
from .tables import as_mask
from .trusses import (FiniteRing, endomorphism_truss, is_ideal, is_paragon, is_subtruss,
                      quotient_by_paragon, ring_from_truss, shift_truss, truss_from_ring, truss_morphisms)


@dataclass(frozen=True)
class Suite:
    name: str
    statement: str
    items: object      # corpus -> list of items
    check: object      # item -> list of (what, witness)


SUITES = {}


def suite(name, statement, items):
    def register(fn):
        SUITES[name] = Suite(name, statement, items, fn)
        return fn
    return register


@dataclass
class SuiteResult:
    name: str
    statement: str
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def render(self, limit=5):
        head = f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checked} instances) - {self.statement}"
        lines = [head]
        for what, wit in self.failures[:limit]:
            lines.append(f"  failure: {what}" + ("" if wit is None else f" witness={wit}"))
        if len(self.failures) > limit:
            lines.append(f"  ... {len(self.failures) - limit} more")
        return "\n".join(lines)


def _run_item(args):
    name, item = args
    try:
        return list(SUITES[name].check(item))
    except HeapModError as exc:
        return [(f"{type(exc).__name__}: {exc}", getattr(exc, "witness", None))]


def run_suite(name, corpus, jobs=1):
    s = SUITES[name]
    items = s.items(corpus)
    tasks = [(name, it) for it in items]
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_run_item, tasks))
    else:
        parts = [_run_item(t) for t in tasks]
    return SuiteResult(name, s.statement, len(items), [f for p in parts for f in p])


class Fails(list):
    def expect(self, cond, what, witness=None):
        if not cond:
            self.append((what, witness))
        return bool(cond)


# ----------------------------------------------------------------------------- helpers

def _of(corpus, kind, lo=0, hi=None, pred=None):
    out = []
    for x in corpus.of_kind(kind):
        n = x.order if kind != "affine" else x.carrier
        if n >= lo and (hi is None or n <= hi) and (pred is None or pred(x)):
            out.append(x)
    return out


def _same_truss_pairs(objs):
    return [(a, b) for a in objs for b in objs if a.truss == b.truss]


def _is_hom(f, G, G2):
    f = np.asarray(f)
    return bool((f[G.table] == G2.table[f[:, None], f[None, :]]).all()) if G.order else True


def _set_partitions(n):
    """Restricted growth strings: each set partition of range(n) once."""
    def rec(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(m + 1):
            yield from rec(prefix + [v], max(m, v + 1) if v == m else m)
    if n == 0:
        yield ()
        return
    yield from rec([0], 1)


def _compatible(labels, tables):
    """Does the partition respect every table?  lead_fixed marks a first axis indexed by the truss."""
    lab = np.asarray(labels)
    reps = np.array([labels.index(v) for v in labels])
    for arr, lead_fixed in tables:
        nd = arr.ndim
        idx = []
        for d in range(nd):
            shape = [1] * nd
            shape[d] = -1
            base = np.arange(arr.shape[d]) if (lead_fixed and d == 0) else reps
            idx.append(base.reshape(shape))
        if not (lab[arr] == lab[arr[tuple(idx)]]).all():
            return False
    return True


def _subsets(n):
    for bits in range(1, 1 << n):
        yield [i for i in range(n) if bits >> i & 1]


def _ring_truss(T):
    return T.absorber is not None and T.unit is not None


def _group_of(H):
    return retract(H, 0)


# ----------------------------------------------------------------------------- heaps

@suite("ex-heaps", "the empty set and a point are heaps; odd residues form a heap whose retract is cyclic; "
       "the non-empty sub-heaps of a group heap are exactly the cosets",
       lambda c: [("small", None), ("odd", 1), ("odd", 2), ("odd", 3), ("odd", 4)]
       + [("coset", _group_of(H)) for H in _of(c, "heap", 1, 8)])
def _ex_heaps(item):
    f = Fails()
    kind, x = item
    if kind == "small":
        f.expect(empty_heap().report.valid, "empty heap invalid")
        f.expect(FiniteHeap(1, [0]).report.valid, "one-point heap invalid")
    elif kind == "odd":
        k = x
        odds = list(range(1, 2 * k, 2))
        pos = {v: i for i, v in enumerate(odds)}
        tab = [pos[(a - b + c) % (2 * k)] for a in odds for b in odds for c in odds]
        H = FiniteHeap(k, tab)
        f.expect(H.report.valid, "odd residue heap invalid", k)
        f.expect(find_isomorphism(retract(H, pos[1]), FiniteAbelianGroup.cyclic(k)) is not None,
                 "retract at 1 is not cyclic", k)
    else:
        G = x
        for S in _subsets(G.order):
            coset_test(G, S)          # asserts the two characterizations agree
    return f


@suite("heap-retract", "H(G(H;e)) = H for every heap and basepoint, and G(H(G);0) = G",
       lambda c: _of(c, "heap"))
def _heap_retract(H):
    f = Fails()
    for e in range(H.order):
        f.expect(heap_from_group(retract(H, e)) == H, "H(G(H;e)) differs from H", e)
    if H.order:
        G = retract(H, 0)
        f.expect(retract(heap_from_group(G), 0) == G, "G(H(G);0) differs from G")
    return f


@suite("heap-translations", "translations form an abelian group and Trans(f) is a group morphism",
       lambda c: [(a, b) for a in _of(c, "heap", 1, 3) for b in _of(c, "heap", 1, 3)])
def _heap_translations(pair):
    H, H2 = pair
    f = Fails()
    tg = translation_group(H)
    f.expect(tg.group.order == H.order, "Trans(H) has the wrong order", tg.group.order)
    for m in heap_morphisms(H, H2):
        trans_map(m, H, H2)           # raises if not well defined or not additive
    return f


@suite("heap-subheap", "sub-heap relations are congruences with sub-heap classes, and every congruence is one",
       lambda c: _of(c, "heap", 1, 6))
def _heap_subheap(H):
    f = Fails()
    n = H.order
    rels = set()
    for S in _subsets(n):
        if check_closed(H, as_mask(n, S)) is None:
            q = subheap_relation(H, S)
            for cls in q.classes:
                f.expect(check_closed(H, as_mask(n, cls)) is None, "class is not a sub-heap", cls)
            rels.add(q.classes)
    for labels in _set_partitions(n):
        if _compatible(labels, [(H.t3, False)]):
            classes = tuple(tuple(x for x in range(n) if labels[x] == v) for v in range(max(labels) + 1))
            f.expect(tuple(sorted(classes)) in {tuple(sorted(r)) for r in rels},
                     "congruence is not a sub-heap relation", labels)
    return f


@suite("prop-AhAb", "basepoint-preserving heap morphisms are exactly the group morphisms of the retracts",
       lambda c: [(a, b) for a in _of(c, "heap", 1, 4) for b in _of(c, "heap", 1, 4)])
def _prop_ahab(pair):
    H, H2 = pair
    f = Fails()
    hms = heap_morphisms(H, H2)
    for e in range(H.order):
        for e2 in range(H2.order):
            lhs = sorted(m for m in hms if m[e] == e2)
            rhs = group_homomorphisms(retract(H, e), retract(H2, e2))
            f.expect(lhs == rhs, "morphism sets differ", (e, e2))
    return f


@suite("cor-AhAb", "a function is a heap morphism iff each translate of it to given basepoints is a group morphism",
       lambda c: [(a, b) for a in _of(c, "heap", 1, 3) for b in _of(c, "heap", 1, 3)])
def _cor_ahab(pair):
    H, H2 = pair
    f = Fails()
    T2 = H2.t3
    for vals in itertools.product(range(H2.order), repeat=H.order):
        v = np.array(vals)
        is_m = is_heap_morphism(vals, H, H2)[0]
        every = all(_is_hom(T2[v, v[e], e2], retract(H, e), retract(H2, e2))
                    for e in range(H.order) for e2 in range(H2.order))
        at_image = all(_is_hom(v, retract(H, e), retract(H2, int(v[e]))) for e in range(H.order))
        f.expect(is_m == every == at_image, "characterizations disagree", vals)
    return f


@suite("cor-mapsheaps", "f is a morphism of group heaps iff x -> f(x) - f(0) is a group morphism",
       lambda c: [(_group_of(a), _group_of(b)) for a in _of(c, "heap", 1, 3) for b in _of(c, "heap", 1, 3)])
def _cor_mapsheaps(pair):
    G, G2 = pair
    f = Fails()
    H, H2 = heap_from_group(G), heap_from_group(G2)
    for vals in itertools.product(range(G2.order), repeat=G.order):
        v = np.array(vals)
        shifted = G2.table[v, G2.neg[v[G.zero]]]
        f.expect(is_heap_morphism(vals, H, H2)[0] == _is_hom(shifted, G, G2), "characterizations disagree", vals)
    return f


@suite("prop-affine", "groups are the same as pointed heaps: objects correspond exactly and morphisms match",
       lambda c: [(_group_of(a), _group_of(b)) for a in _of(c, "heap", 1, 4) for b in _of(c, "heap", 1, 4)])
def _prop_affine(pair):
    G, G2 = pair
    f = Fails()
    H, H2 = heap_from_group(G), heap_from_group(G2)
    f.expect(retract(H, G.zero) == G, "G(H(G);0) differs from G")
    pointed = sorted(m for m in heap_morphisms(H, H2) if m[G.zero] == G2.zero)
    f.expect(pointed == group_homomorphisms(G, G2), "pointed heap morphisms differ from group morphisms")
    return f


# ----------------------------------------------------------------------------- trusses and modules

def _truss_items(c):
    rings = [FiniteRing.zmod(n) for n in range(1, 9)]
    rings.append(FiniteRing.zmod(2).product(FiniteRing.zmod(2)))
    rings.append(FiniteRing.zero_ring(FiniteAbelianGroup.cyclic(3)))
    return [("ring", R) for R in rings] + [("endo", H) for H in _of(c, "heap", 1, 4)]


@suite("ex-trusses", "T(R) is a truss with absorber 0 and E(H) is a unital truss", _truss_items)
def _ex_trusses(item):
    f = Fails()
    kind, x = item
    if kind == "ring":
        T = truss_from_ring(x)
        f.expect(T.absorber == x.zero, "absorber of T(R) is not 0")
        f.expect(T.unit == x.unit, "unit of T(R) differs from the ring unit", (T.unit, x.unit))
        f.expect(ring_from_truss(T) == x, "ring recovered from T(R) differs")
    else:
        E = endomorphism_truss(x)
        f.expect(E.truss.report.valid, "E(H) invalid")
    return f


def _paragon_items(c):
    small = _of(c, "truss", 1, 3)
    extra = [truss_from_ring(FiniteRing.zmod(4)), truss_from_ring(FiniteRing.zmod(2).product(FiniteRing.zmod(2)))]
    return [("one", T) for T in small + extra] + [("morph", (a, b)) for a in small for b in small]


@suite("truss-paragons", "paragons are exactly the classes of truss congruences, with quotient trusses; "
       "preimages of points under truss morphisms are paragons", _paragon_items)
def _truss_paragons(item):
    f = Fails()
    kind, T = item
    if kind == "morph":
        T, T2 = T
        for m in truss_morphisms(T, T2):
            for v in set(m):
                pre = [x for x in range(T.order) if m[x] == v]
                f.expect(is_paragon(T, pre)[0], "preimage of a point is not a paragon", (m, v))
        return f
    n = T.order
    paragons = set()
    for P in _subsets(n):
        if is_paragon(T, P)[0]:
            paragons.add(tuple(P))
            Q, q = quotient_by_paragon(T, P)
            f.expect(Q.report.valid, "quotient by a paragon is not a truss", P)
            for cls in q.classes:
                f.expect(is_paragon(T, cls)[0], "class of a paragon relation is not a paragon", cls)
    for labels in _set_partitions(n):
        if _compatible(labels, [(T.heap.t3, False), (T.m2, False)]):
            for v in range(max(labels) + 1):
                cls = tuple(x for x in range(n) if labels[x] == v)
                f.expect(cls in paragons, "congruence class is not a paragon", cls)
    return f


def _modules(c, lo=0, hi=3):
    return _of(c, "module", lo, hi)


@suite("module-induction", "the e-induced action is a module with absorber e and inducing twice equals inducing once",
       lambda c: _modules(c, 1))
def _module_induction(M):
    f = Fails()
    for e in range(M.order):
        Ie = induced_action(M, e)
        f.expect(Ie.report.valid, "induced action is not a module", e)
        f.expect(e in absorbers(Ie), "e is not an absorber of the induced action", e)
        for g in range(M.order):
            f.expect(induced_action(Ie, g) == induced_action(M, g), "induction does not stabilise", (e, g))
    return f


@suite("lem-stab", "the stabilizer of a module is a sub-truss and, when non-empty, a paragon",
       lambda c: _modules(c))
def _lem_stab(M):
    f = Fails()
    S = stabilizer(M)
    f.expect(is_subtruss(M.truss, S), "stabilizer is not a sub-truss", S)
    if S:
        f.expect(is_paragon(M.truss, S)[0], "stabilizer is not a paragon", S)
    return f


def _stab_on(M, subset):
    A = M.a2
    xs = list(subset)
    return {u for u in range(M.truss.order) if all(A[u, x] == x for x in xs)}


def _unisim_items(c):
    mods = _modules(c)
    items = [("one", M) for M in mods]
    items += [("pair", (M, N)) for M, N in _same_truss_pairs(mods) if M.order and N.order]
    items.append(("strict", None))
    return items


@suite("prop-unisim", "stabilizers under induction: Stab(M) is inside every induced stabilizer, these agree for "
       "all basepoints, grow along morphisms, [u,ut,t] lands in Stab(M), and unitality matches",
       _unisim_items)
def _prop_unisim(item):
    f = Fails()
    kind, x = item
    if kind == "strict":
        M = regular_module(shift_truss(3))
        S, Se = set(stabilizer(M)), set(stabilizer(induced_action(M, 0)))
        f.expect(S == {0} and Se == {0, 1, 2}, "strictness example changed", (sorted(S), sorted(Se)))
        return f
    if kind == "pair":
        M, N = x
        S = set(stabilizer(M))
        for m in module_morphisms(M, N):
            f.expect(S <= _stab_on(N, set(m)), "Stab(M) not inside Stab(f(M))", m)
        return f
    M = x
    T = M.truss
    S = set(stabilizer(M))
    n = M.order
    induced = [set(stabilizer(induced_action(M, e))) for e in range(n)]
    for e in range(n):
        f.expect(S <= induced[e], "Stab(M) not inside Stab(M, e)", e)
        f.expect(induced[e] == induced[0], "induced stabilizers differ", (0, e))
    if n:
        H, TM = T.heap.t3, T.m2
        for u in induced[0]:
            for t in range(T.order):
                v = int(H[u, TM[u, t], t])
                f.expect(v in S, "[u,ut,t] is not in Stab(M)", (u, t))
        if T.unit is not None:
            unital = bool((M.a2[T.unit] == np.arange(n)).all())
            f.expect(unital == (T.unit in induced[0]), "unitality does not match the induced stabilizer")
    return f


@suite("lem-absorber", "e is an absorber iff the e-induced action equals the action", lambda c: _modules(c))
def _lem_absorber(M):
    absorbers(M, check=True)
    return []


@suite("lem-annMod", "a non-empty annihilator Ann_e(M) is a paragon and right ideal, two-sided at an absorber",
       lambda c: _modules(c, 1))
def _lem_annmod(M):
    f = Fails()
    E = absorbers(M, check=False)
    for e in range(M.order):
        Z = annihilator(M, e)
        if Z:
            f.expect(is_paragon(M.truss, Z)[0], "annihilator is not a paragon", e)
            f.expect(is_ideal(M.truss, Z, "right"), "annihilator is not a right ideal", e)
            if e in E:
                f.expect(is_ideal(M.truss, Z, "two-sided"), "annihilator at an absorber is not two-sided", e)
    return f


def _ring_module_items(c):
    out = []
    for R in [FiniteRing.zmod(n) for n in range(1, 7)] + [FiniteRing.zmod(2).product(FiniteRing.zmod(2))]:
        T = truss_from_ring(R)
        G = module_to_tgroup(regular_module(T), R.zero)
        out.append(G)
    T2 = truss_from_ring(FiniteRing.zmod(2))
    V = FiniteAbelianGroup.cyclic(2).product(FiniteAbelianGroup.cyclic(2))
    out.append(FiniteTGroup(V, T2, [0, 0, 0, 0, 0, 1, 2, 3]))
    return out


@suite("lem-EquiClIFFIndSubm", "a subset of an R-module is a coset of a submodule iff it is an induced submodule",
       _ring_module_items)
def _lem_cosets(G):
    for S in _subsets(G.order):
        coset_induced_submodule_test(G, S)
    return []


@suite("prop-absorbers-under", "module morphisms from the one-point module pick out exactly the absorbers",
       lambda c: _modules(c))
def _prop_abs_under(M):
    f = Fails()
    T = M.truss
    point = FiniteTModule(T, FiniteHeap(1, [0]), np.zeros(T.order, dtype=np.int64))
    picked = sorted(m[0] for m in module_morphisms(point, M))
    f.expect(tuple(picked) == absorbers(M), "pointed morphisms differ from absorbers", tuple(picked))
    return f


def _tgroup_items(c):
    mods = [M for M in _modules(c) if absorbers(M, check=False)]
    items = [("module", M) for M in mods]
    small = [M for M in mods if M.order <= 3]
    items += [("pair", (M, N)) for M, N in _same_truss_pairs(small)]
    return items


@suite("thm-Tgroups", "modules with a chosen absorber and T-groups determine each other, morphisms included",
       _tgroup_items)
def _thm_tgroups(item):
    f = Fails()
    kind, x = item
    if kind == "module":
        for e in absorbers(x, check=False):
            G = tgroup_module_roundtrip(x, e)
            tgroup_module_roundtrip(G)
        return f
    M, N = x
    for e in absorbers(M, check=False):
        for e2 in absorbers(N, check=False):
            G, G2 = module_to_tgroup(M, e), module_to_tgroup(N, e2)
            lhs = sorted(m for m in module_morphisms(M, N) if m[e] == e2)
            rhs = sorted(h for h in group_homomorphisms(G.group, G2.group)
                         if (np.array(h)[G.a2] == G2.a2[:, np.array(h)]).all())
            f.expect(lhs == rhs, "absorber-preserving module maps differ from T-group maps", (e, e2))
    return f


# ----------------------------------------------------------------------------- heaps of modules

def _hms(c, lo=0, hi=None):
    return _of(c, "hmodule", lo, hi)


def _order2_family(T):
    """All lambda tables over T on the two-element heap, as a (B, |T|, 2, 2) array."""
    k = T.order
    B = 1 << (4 * k)
    codes = np.arange(B, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(4 * k)) & 1
    return bits.reshape(B, k, 2, 2)


def _family_laws(T, L):
    """Per table: premise (first entry, third entry, associativity, idempotency), base change, interchange,
    and 'every translation is a morphism'."""
    H = heap_from_group(FiniteAbelianGroup.cyclic(2)).t3
    TH, TM = T.heap.t3, T.m2
    B, k = L.shape[:2]
    b = np.arange(B)[:, None, None, None, None]
    x = np.arange(2)
    t = np.arange(k)
    # first entry: Λ([s,t,u],m,n) = [Λ(s,m,n),Λ(t,m,n),Λ(u,m,n)]
    s3, t3, u3 = t[:, None, None], t[None, :, None], t[None, None, :]
    first = np.ones(B, dtype=bool)
    for m in range(2):
        for n in range(2):
            lhs = L[:, TH[s3, t3, u3], m, n]
            rhs = H[L[:, s3, m, n], L[:, t3, m, n], L[:, u3, m, n]]
            first &= (lhs == rhs).reshape(B, -1).all(axis=1)
    # third entry: Λ(t,m,[a,b,c]) = [Λ(t,m,a),Λ(t,m,b),Λ(t,m,c)]
    third = np.ones(B, dtype=bool)
    for a, bb, cc in itertools.product(range(2), repeat=3):
        third &= (L[:, :, :, H[a, bb, cc]] == H[L[:, :, :, a], L[:, :, :, bb], L[:, :, :, cc]]).reshape(B, -1).all(axis=1)
    # associativity: Λ(st,m,n) = Λ(s,m,Λ(t,m,n))
    assoc = np.ones(B, dtype=bool)
    for m in range(2):
        lhs = L[:, TM, m, :]                                                  # (B,k,k,n)
        inner = L[:, :, m, :]                                                 # (B,k,n)
        rhs = L[np.arange(B)[:, None, None, None], t[None, :, None, None], m, inner[:, None, :, :]]
        assoc &= (lhs == rhs).reshape(B, -1).all(axis=1)
    idem = (L[:, :, x, x] == x).reshape(B, -1).all(axis=1)
    # base change Λ(t,m,n) = [Λ(t,e,n),Λ(t,e,m),m] and interchange [Λ(t,m,e),e,Λ(t,e,n)] = Λ(t,m,n)
    tt = t[None, :, None, None, None]
    m_, n_, e_ = x[None, None, :, None, None], x[None, None, None, :, None], x[None, None, None, None, :]
    bc_pt = L[b, tt, m_, n_] == H[L[b, tt, e_, n_], L[b, tt, e_, m_], m_]
    ic_pt = H[L[b, tt, m_, e_], e_, L[b, tt, e_, n_]] == L[b, tt, m_, n_]
    bc = bc_pt.reshape(B, -1).all(axis=1)
    ic = ic_pt.reshape(B, -1).all(axis=1)
    # translations tau_e^f(m) = [m,e,f] are morphisms: tau(Λ(t,m,n)) = Λ(t,tau m,tau n)
    trans = np.ones(B, dtype=bool)
    for e in range(2):
        for g in range(2):
            tau = H[x, e, g]
            trans &= (tau[L] == L[:, :, tau[:, None], tau[None, :]]).reshape(B, -1).all(axis=1)
    return first & third & assoc & idem, first & third & assoc, bc, ic, trans, bc_pt, ic_pt


def _family_trusses():
    from .enumeration import enumerate_trusses
    out = [T for n in (1, 2) for T in enumerate_trusses(n, up_to_iso=False)]
    out.append(truss_from_ring(FiniteRing.zmod(4)))
    out.append(truss_from_ring(FiniteRing.zmod(2).product(FiniteRing.zmod(2))))
    return out


@suite("lem-basechange-interchange", "base change holds iff the interchange form [Λ(t,m,e),e,Λ(t,e,n)] = Λ(t,m,n) does",
       lambda c: [("family", T) for T in _family_trusses()] + [("corpus", x) for x in _hms(c, 1)])
def _lem_bc_ic(item):
    f = Fails()
    kind, x = item
    if kind == "corpus":
        d = hm_.derived_identities(x, strict=False)
        f.expect(d.check("base change equivalence").passed, "equivalence fails on a corpus table")
        return f
    L = _order2_family(x)
    _, axioms, bc, ic, _, bc_pt, ic_pt = _family_laws(x, L)
    # pointwise: BC at (t,m,n,e) is IC at (t,e,n,m) after moving terms, in any abelian heap
    f.expect((bc_pt == np.swapaxes(ic_pt, 2, 4)).all(), "pointwise rearrangement fails")
    bad = np.flatnonzero(axioms & (bc != ic))
    f.expect(bad.size == 0, "base change and interchange verdicts differ", None if not bad.size else int(bad[0]))
    return f


@suite("lem-idem-inter", "derived identities: Λ(t,-,n) is a heap map, idempotency, interchange, negation and "
       "the middle-entry rule hold in every heap of modules", lambda c: _hms(c))
def _lem_idem_inter(hm):
    f = Fails()
    d = hm_.derived_identities(hm, strict=False)
    for ch in d.failures:
        f.append((ch.name + ": " + ch.detail, ch.witness))
    return f


@suite("lem-trans", "given the other axioms and idempotency, every translation is a morphism iff base change holds",
       lambda c: _family_trusses())
def _lem_trans(T):
    f = Fails()
    L = _order2_family(T)
    premise, _, bc, _, trans, _, _ = _family_laws(T, L)
    bad = np.flatnonzero(premise & (bc != trans))
    f.expect(bad.size == 0, "verdicts differ", None if not bad.size else int(bad[0]))
    return f


def _sub_hmodules(hm):
    n, L = hm.order, hm.L3
    for S in _subsets(n):
        mask = as_mask(n, S)
        if check_closed(hm.heap, mask) is None and mask[L[:, S][:, :, S]].all():
            yield S


@suite("prop-cong", "sub-heap-of-modules relations are congruences, and congruence classes are sub-heaps of modules",
       lambda c: _hms(c, 1, 4))
def _prop_cong(hm):
    f = Fails()
    n = hm.order
    for S in _sub_hmodules(hm):
        q = hm_.congruence_classes(hm, S)          # asserts the relation is a congruence
        f.expect(q.quotient.report.valid, "quotient is not a heap of modules", tuple(S))
    subs = {tuple(S) for S in _sub_hmodules(hm)}
    for labels in _set_partitions(n):
        if _compatible(labels, [(hm.heap.t3, False), (hm.L3, True)]):
            for v in range(max(labels) + 1):
                cls = tuple(x for x in range(n) if labels[x] == v)
                f.expect(cls in subs, "congruence class is not a sub-heap of modules", cls)
    return f


def _homia_items(c):
    mods = _modules(c)
    return [("one", M) for M in mods] + [("pair", p) for p in _same_truss_pairs([M for M in mods if M.order <= 2])]


@suite("prop-homia", "induced submodules with their induced actions are heaps of modules, functorially",
       _homia_items)
def _prop_homia(item):
    f = Fails()
    kind, x = item
    if kind == "pair":
        M, N = x
        A, B = hm_.from_module(M), hm_.from_module(N)
        targets = {m.values for m in hm_.hmodule_morphisms(A, B, check=False)}
        for m in module_morphisms(M, N):
            f.expect(m in targets, "module map is not a morphism of the associated heaps of modules", m)
        return f
    M = x
    hm = hm_.from_module(M)
    f.expect(hm.report.valid, "from_module is invalid")
    # induced submodules: sub-heaps closed under every t ▷_e n with e, n inside
    A, H = M.a2, M.heap.t3
    for S in _subsets(M.order):
        mask = as_mask(M.order, S)
        if check_closed(M.heap, mask) is not None:
            continue
        vals = H[A[:, S][:, None, :], A[:, S][:, :, None], np.array(S)[None, :, None]]
        if mask[vals].all():
            pos = {v: i for i, v in enumerate(S)}
            sub = FiniteHeapOfModules(M.truss, FiniteHeap(len(S), [pos[int(v)] for v in H[np.ix_(S, S, S)].ravel()]),
                                      [pos[int(v)] for v in hm.L3[:, S][:, :, S].ravel()])
            f.expect(sub.report.valid, "induced submodule is not a heap of modules", tuple(S))
    return f


@suite("lem-homtoind", "Λ(-,e,-) is a module with absorber e, H(M, ·_e) = M and (H(M), ·_e) is the e-induced action",
       lambda c: [("hm", x) for x in _hms(c, 1)] + [("module", M) for M in _modules(c, 1)])
def _lem_homtoind(item):
    f = Fails()
    kind, x = item
    if kind == "hm":
        for e in range(x.order):
            M = hm_.to_module(x, e)
            f.expect(M.report.valid and e in absorbers(M), "Λ(-,e,-) is not a module with absorber e", e)
            f.expect(hm_.from_module(M) == x, "H(M, ·_e) differs", e)
    else:
        hm = hm_.from_module(x)
        for e in range(x.order):
            f.expect(hm_.to_module(hm, e) == induced_action(x, e), "(H(M), ·_e) is not the induced action", e)
    return f


@suite("cor-ind", "every heap of modules comes from an induced action on a module with absorber",
       lambda c: _hms(c, 1))
def _cor_ind(hm):
    f = Fails()
    for e in range(hm.order):
        M = hm_.to_module(hm, e)
        f.expect(hm_.from_module(induced_action(M, e)) == hm, "not recovered from the induced action", e)
    return f


@suite("lem-entropy", "when t t' and t' t act alike, the entropic interchange of Λ(t,..) and Λ(t',..) holds",
       lambda c: _hms(c, 1))
def _lem_entropy(hm):
    f = Fails()
    for t in range(hm.truss.order):
        for t2 in range(hm.truss.order):
            v = hm_.entropy_check(hm, t, t2)
            f.expect(v.status != "contract-violation", "entropy law fails", (t, t2, v.witness))
    return f


@suite("lem-isotropicheap", "the stabilizer of a heap of modules is a sub-truss and, when non-empty, a paragon",
       lambda c: _hms(c))
def _lem_isotropic(hm):
    f = Fails()
    S = hm_.stabilizer_hm(hm)
    f.expect(is_subtruss(hm.truss, S), "stabilizer is not a sub-truss", S)
    return f


@suite("lem-annihilator", "a non-empty annihilator of a heap of modules is a two-sided ideal", lambda c: _hms(c))
def _lem_annihilator(hm):
    f = Fails()
    Z = hm_.annihilator_hm(hm)
    if Z:
        f.expect(is_ideal(hm.truss, Z, "two-sided"), "annihilator is not a two-sided ideal", Z)
    return f


@suite("prop-contractible", "a non-empty heap of modules is contractible iff (M,·_e) is e-contractible for every e, "
       "iff for some e", lambda c: _hms(c, 1))
def _prop_contractible(hm):
    f = Fails()
    c1 = bool(hm_.annihilator_hm(hm, check=False))
    per = [bool(annihilator(hm_.to_module(hm, e), e)) for e in range(hm.order)]
    f.expect(c1 == all(per) == any(per), "the three conditions disagree", (c1, per))
    return f


@suite("thm-IUmods", "isotropic: Stab(T) and the unit lie in Stab(M), and invertible stabilizing elements form a "
       "group; contractible: the absorber of T lies in Ann(M)", lambda c: _hms(c, 1))
def _thm_iumods(hm):
    f = Fails()
    T = hm.truss
    S, Z = set(hm_.stabilizer_hm(hm)), set(hm_.annihilator_hm(hm))
    if S:
        f.expect(set(stabilizer(regular_module(T))) <= S, "Stab(T) is not inside Stab(M)")
        if T.unit is not None:
            u = T.unit
            f.expect(u in S, "unit is not in Stab(M)")
            TM = T.m2
            units = {a for a in range(T.order) if any(TM[a, b] == u and TM[b, a] == u for b in range(T.order))}
            grp = S & units
            for a in grp:
                f.expect(all(int(TM[a, b]) in grp for b in grp), "Stab(M)^x not closed under products", a)
                f.expect(any(TM[a, b] == u and b in grp for b in grp), "Stab(M)^x not closed under inverses", a)
    if Z and T.absorber is not None:
        f.expect(T.absorber in Z, "absorber of T is not in Ann(M)")
    return f


@suite("prop-cross", "M x T with (m,s)(n,t) = ([Λ(s,e,n),e,m], st) is a truss for every e",
       lambda c: _hms(c, 1))
def _prop_cross(hm):
    f = Fails()
    if hm.truss.order == 0:
        return f
    for e in range(hm.order):
        f.expect(hm_.cross_product(hm, e).truss.report.valid, "cross product is not a truss", e)
    return f


@suite("lem-cross", "M is a module over the cross product, cross products at different basepoints are isomorphic, "
       "the fibres M x {u} are paragons with quotient T, and {e} x T is a sub-truss",
       lambda c: _hms(c, 1))
def _lem_cross(hm):
    f = Fails()
    for e in range(hm.order):
        r = hm_.cross_product_lemmas(hm, e)
        for ch in r.failures:
            f.append((f"at {e}: {ch.name}", ch.witness))
    return f


def _hm_pairs(c, hi=3):
    small = _hms(c, 1, hi)
    return _same_truss_pairs(small)


@suite("prop-newTHmodTMod", "maps with f(m) = n that respect Λ are exactly the T-group maps of the retracts at m and n",
       lambda c: _hm_pairs(c))
def _prop_new(pair):
    hm_.hmodule_morphisms(*pair, check=True)
    return []


@suite("cor-THmodTMod", "f respects Λ iff its translate to any pair of basepoints is a T-group map",
       lambda c: _hm_pairs(c, 2))
def _cor_thmod(pair):
    f = Fails()
    M, N = pair
    good = {m.values for m in hm_.hmodule_morphisms(M, N, check=False)}
    HN = N.heap.t3
    for vals in itertools.product(range(N.order), repeat=M.order):
        v = np.array(vals)
        every = True
        for m in range(M.order):
            for nb in range(N.order):
                F = tuple(int(a) for a in HN[v, v[m], nb])
                every &= F in set(hm_.tgroup_morphisms_at(M, m, N, nb, None))
        f.expect((vals in good) == every, "characterizations disagree", vals)
    return f


def _tgroups_from(c, hi=3):
    out = []
    for x in _hms(c, 1, hi):
        out.append(module_to_tgroup(hm_.to_module(x, 0), 0))
    return out


@suite("cor-ringshoms", "for T-groups, f is a morphism of the associated heaps of modules iff f - f(0) is a T-group map",
       lambda c: _same_truss_pairs(_tgroups_from(c, 3)))
def _cor_ringshoms(pair):
    f = Fails()
    G, G2 = pair
    A = hm_.from_module(tgroup_to_module(G)[0])
    B = hm_.from_module(tgroup_to_module(G2)[0])
    good = {m.values for m in hm_.hmodule_morphisms(A, B, check=False)}
    for vals in itertools.product(range(G2.order), repeat=G.order):
        v = np.array(vals)
        F = G2.group.table[v, G2.group.neg[v[G.group.zero]]]
        lin = _is_hom(F, G.group, G2.group) and bool((F[G.a2] == G2.a2[:, F]).all())
        f.expect((vals in good) == lin, "characterizations disagree", vals)
    return f


@suite("prop-pointed-hmod", "heaps of modules with a chosen point are the same as T-groups",
       lambda c: _hms(c, 1))
def _prop_pointed(hm):
    f = Fails()
    for e in range(hm.order):
        G = module_to_tgroup(hm_.to_module(hm, e), e)
        M, z = tgroup_to_module(G)
        f.expect(hm_.from_module(M) == hm and z == e, "pointed roundtrip fails", e)
    return f


def _ring_hms(c):
    return [x for x in _hms(c) if _ring_truss(x.truss)]


@suite("prop-RHMod", "heaps of R-modules are the inhabited isotropic contractible heaps of T(R)-modules",
       _ring_hms)
def _prop_rhmod(hm):
    f = Fails()
    c = hm_.classify(hm)
    v = hm_.ring_affine_classify(hm)
    T = hm.truss
    expected = c.inhabited and T.unit in c.stab and T.absorber in c.ann
    f.expect(v.is_affine == expected, "classification disagrees with Stab/Ann membership")
    return f


def _morph_ring_items(c):
    mods = [x for x in _ring_hms(c) if hm_.ring_affine_classify(x).is_affine and x.order <= 3]
    return _same_truss_pairs(mods)


@suite("prop-morphRing", "f is a morphism of affine R-modules iff [f(-), f(0), 0] is R-linear",
       _morph_ring_items)
def _prop_morphring(pair):
    f = Fails()
    M, N = pair
    G = hm_.ring_affine_classify(M).module
    G2 = hm_.ring_affine_classify(N).module
    good = {m.values for m in hm_.hmodule_morphisms(M, N, check=False)}
    HN = N.heap.t3
    for vals in itertools.product(range(N.order), repeat=M.order):
        v = np.array(vals)
        F = HN[v, v[0], 0]
        lin = _is_hom(F, G.group, G2.group) and bool((F[G.a2] == G2.a2[:, F]).all())
        f.expect((vals in good) == lin, "characterizations disagree", vals)
    return f


def _affmod_items(c):
    items = [("corpus", x) for x in _ring_hms(c)]
    items += [("family", n) for n in (1, 2)]
    return items


@suite("prop-affinemods", "the point-vector axioms of an affine R-module hold iff the structure is an isotropic "
       "contractible heap of T(R)-modules", _affmod_items)
def _prop_affinemods(item):
    kind, x = item
    if kind == "corpus":
        R = ring_from_truss(x.truss)
        aff.affine_Rmodule_axioms(R, x.order, x.heap.ternary, x.lam)
        return []
    # every lambda table over Z/n for the heap of Z/n, n <= 2
    R = FiniteRing.zmod(x)
    H = heap_from_group(R.group)
    size = R.order * x * x
    for vals in itertools.product(range(x), repeat=size):
        aff.affine_Rmodule_axioms(R, x, H.ternary, vals)
    return []


@suite("cor-summRmodules", "non-empty affine R-modules and R-modules correspond, with the module recovered exactly",
       lambda c: [x for x in _ring_hms(c) if x.order])
def _cor_summ(hm):
    f = Fails()
    v = hm_.ring_affine_classify(hm)
    if v.is_affine:
        R = ring_from_truss(hm.truss)
        r = aff.affine_Rmodule_axioms(R, hm.order, hm.heap.ternary, hm.lam)
        f.expect(r.valid, "affine R-module axioms fail on an affine heap of modules")
        f.expect(hm_.from_module(tgroup_to_module(v.module)[0]) == hm, "module does not give back the structure")
    return f


# ----------------------------------------------------------------------------- affine spaces

@suite("lem-Trans", "Trans(M) is a T-group under t·τ_a^b = τ_a^Λ(t,a,b), and Trans(f) is T-linear",
       lambda c: [("one", x) for x in _hms(c, 1)] + [("pair", p) for p in _hm_pairs(c, 3)])
def _lem_trans_tgroup(item):
    f = Fails()
    kind, x = item
    if kind == "one":
        tt = aff.trans_tgroup(x)
        f.expect(tt.tgroup.report.valid, "Trans(M) is not a T-group")
        return f
    M, N = x
    tM, tN = aff.trans_tgroup(M), aff.trans_tgroup(N)
    for m in hm_.hmodule_morphisms(M, N, check=False):
        img = trans_map(m.values, M.heap, N.heap)
        f.expect(bool((img[tM.tgroup.a2] == tN.tgroup.a2[:, img]).all()), "Trans(f) is not T-linear", m.values)
    return f


@suite("thm-affT", "T-affine spaces and heaps of T-modules are equivalent: phi(psi(M)) = M exactly and "
       "psi(phi(A)) is isomorphic to A through the counit",
       lambda c: [("hm", x) for x in _hms(c)] + [("affine", a) for a in c.of_kind("affine")]
       + [("pair", p) for p in _hm_pairs(c, 2)])
def _thm_afft(item):
    f = Fails()
    kind, x = item
    if kind == "hm":
        aff.equivalence_roundtrip(x)
    elif kind == "affine":
        aff.equivalence_roundtrip(x)
    else:
        M, N = x
        A, B = aff.psi(M), aff.psi(N)
        maps = hm_.hmodule_morphisms(M, N, check=False)
        for m in maps:
            img = trans_map(m.values, M.heap, N.heap)
            pair = aff.AffineMorphismPair(m.values, tuple(int(v) for v in img))
            good, w = aff.validate_affine_morphism(pair, A, B)
            f.expect(good, "(f, Trans(f)) is not an affine morphism", (m.values, w))
        for m in maps:
            img = trans_map(m.values, M.heap, N.heap)
            pair = aff.AffineMorphismPair(m.values, tuple(int(v) for v in img))
            ident = aff.AffineMorphismPair(tuple(range(N.order)), tuple(range(B.group.order)))
            good, _ = aff.validate_affine_morphism(aff.compose_pairs(ident, pair), A, B)
            f.expect(good, "composite pair is not an affine morphism", m.values)
    return f


@suite("cor-isotropic", "the equivalence matches isotropic affine spaces with isotropic heaps of modules",
       lambda c: _hms(c, 1))
def _cor_isotropic(hm):
    f = Fails()
    A = aff.psi(hm)
    iso_hm = bool(hm_.stabilizer_hm(hm))
    iso_group = bool((A.group.a2 == np.arange(A.group.order)[None, :]).all(axis=1).any())
    f.expect(iso_hm == iso_group, "isotropy not preserved", (iso_hm, iso_group))
    return f


@suite("cor-classic", "over the one-point truss, isotropic affine spaces are abelian torsors",
       lambda c: [x for x in _hms(c, 1) if x.truss.order == 1])
def _cor_classic(hm):
    f = Fails()
    A = aff.psi(hm)
    if hm_.stabilizer_hm(hm):
        f.expect(bool((hm.L3[0] == np.arange(hm.order)[None, :]).all()), "Λ(*,m,n) = n fails")
        f.expect(A.group.order == hm.order and A.report.valid, "Trans(M) does not act simply transitively")
        f.expect(aff.phi(A) == hm, "phi(psi(M)) differs")
    return f


def _field_items(c):
    from .enumeration import enumerate_hmodules
    out = []
    for p in (2, 3):
        T = truss_from_ring(FiniteRing.zmod(p))
        for m in range(1, 4 if p == 3 else 5):
            out.extend(x for x in enumerate_hmodules(T, m, up_to_iso=True))
    return out


@suite("cor-afffield", "over F2 and F3, inhabited isotropic contractible heaps of modules are affine spaces: the "
       "vector group acts freely and transitively and (k+k')·τ = (k·τ)∘(k'·τ)", _field_items)
def _cor_afffield(hm):
    f = Fails()
    c = hm_.classify(hm)
    T = hm.truss
    if not (c.inhabited and T.unit in c.stab and T.absorber in c.ann):
        return f
    tt = aff.trans_tgroup(hm)
    A = aff.psi(hm)
    f.expect(A.report.valid, "action is not free and transitive")
    R = ring_from_truss(T)
    add, act, comp = R.group.table, tt.tgroup.a2, tt.tgroup.group.table
    for k in range(R.order):
        for k2 in range(R.order):
            for tau in range(tt.tgroup.order):
                f.expect(act[add[k, k2], tau] == comp[act[k, tau], act[k2, tau]], "(k+k')·τ law fails", (k, k2, tau))
    return f


def _vector_items(c):
    out = []
    for p in (2, 3):
        out.append((p, FiniteAbelianGroup.cyclic(p)))
    out.append((2, FiniteAbelianGroup.cyclic(2).product(FiniteAbelianGroup.cyclic(2))))
    return out


@suite("cor-affine-vector", "an affine space given by a vector group acting on a set is the same as one given by "
       "the bracket and Λ on the set", _vector_items)
def _cor_affvector(item):
    f = Fails()
    p, V = item
    R = FiniteRing.zmod(p)
    T = truss_from_ring(R)
    scal = np.zeros((p, V.order), dtype=np.int64)
    for x in range(V.order):
        for a in range(1, p):
            scal[a, x] = V.plus(int(scal[a - 1, x]), x)
    G = FiniteTGroup(V, T, scal)
    f.expect(G.report.valid, "vector space is not a T(F)-group")
    # A = V with V acting by translation
    rho = V.table
    A = aff.FiniteTAffineSpace(V.order, G, rho)
    f.expect(A.report.valid, "translation action is not an affine space")
    hm = aff.phi(A)
    r = aff.affine_Rmodule_axioms(R, hm.order, hm.heap.ternary, hm.lam)
    f.expect(r.valid, "the ternary description fails the point-vector axioms")
    aff.equivalence_roundtrip(A)
    return f


# ----------------------------------------------------------------------------- Baer-Kaplansky

def _bk_items(c):
    Z = FiniteAbelianGroup.cyclic
    out = []
    for G, H in [(Z(2), Z(2)), (Z(2), Z(3)), (Z(4), Z(2).product(Z(2)))]:
        out.append((_ring_tgroup(G), _ring_tgroup(H)))
    small = _tgroups_from(c, 3)
    out += [(a, b) for a in small for b in small if a.order == b.order and a.truss.order <= 2 and b.truss.order <= 2]
    return out


def _ring_tgroup(G):
    """G as a module over Z/exponent via repeated addition."""
    n = 1
    while True:
        if all(_mult(G, n, x) == G.zero for x in range(G.order)):
            break
        n += 1
    T = truss_from_ring(FiniteRing.zmod(n))
    return FiniteTGroup(G, T, [_mult(G, a, x) for a in range(n) for x in range(G.order)])


def _mult(G, a, x):
    acc = G.zero
    for _ in range(a):
        acc = G.plus(acc, x)
    return acc


@suite("thm-BK", "endomorphism trusses of T-groups are isomorphic iff the groups are isomorphic compatibly with "
       "their T-group endomorphism trusses; E_T(M) is the cross product of M with T-Grp(M)", _bk_items)
def _thm_bk(pair):
    G, H = pair
    hm_.baer_kaplansky_check(G, H)
    return []


def _bk_comm_items(c):
    small = [g for g in _tgroups_from(c, 3) if g.truss.commutative]
    return [(a, b) for a in small for b in small if a.truss == b.truss and a.order == b.order]


@suite("thm-BK-commutative", "over a commutative truss, T-groups are isomorphic iff their endomorphism trusses are "
       "T-linearly isomorphic, and each T-linear truss isomorphism is conjugation by a unique module isomorphism",
       _bk_comm_items)
def _thm_bk_comm(pair):
    f = Fails()
    G, H = pair
    EG, EH = hm_.endo_truss_ET(G), hm_.endo_truss_ET(H)
    FG, FH = EG.maps, EH.maps
    n = G.order
    keyH = {tuple(int(v) for v in row): i for i, row in enumerate(FH)}
    # pointwise T-action on E_T: (t·f)(m) = t·f(m)
    actG = np.array([[keyH_G for keyH_G in _index_rows(FG, G.a2[t][FG])] for t in range(G.truss.order)])
    actH = np.array([[k for k in _index_rows(FH, H.a2[t][FH])] for t in range(H.truss.order)])
    linear = []
    for sigma in find_isomorphisms(EG.truss, EH.truss, limit=None):
        s = np.array(sigma)
        if (s[actG] == actH[:, s]).all():
            linear.append(s)
    tg_isos = [h for h in group_homomorphisms(G.group, H.group) if len(set(h)) == n
               and (np.array(h)[G.a2] == H.a2[:, np.array(h)]).all()]
    f.expect(bool(tg_isos) == bool(linear), "T-group isomorphism and T-linear truss isomorphism disagree",
             (len(tg_isos), len(linear)))
    for s in linear:
        conj = []
        for perm in itertools.permutations(range(n)):
            p = np.array(perm)
            q = np.argsort(p)
            rows = p[FG[:, q]]
            idx = [keyH.get(tuple(int(v) for v in r)) for r in rows]
            if None not in idx and list(idx) == s.tolist():
                conj.append(perm)
        f.expect(len(conj) == 1, "conjugating bijection is not unique", (tuple(s), conj))
        for perm in conj:
            p = np.array(perm)
            f.expect(bool((p[G.a2] == H.a2[:, p]).all()) and
                     is_heap_morphism(perm, heap_from_group(G.group), heap_from_group(H.group))[0],
                     "conjugating bijection is not a module isomorphism", perm)
    return f


def _index_rows(space, rows):
    key = {tuple(int(v) for v in r): i for i, r in enumerate(space)}
    return [key[tuple(int(v) for v in r)] for r in rows]


# ----------------------------------------------------------------------------- spindles and Yang-Baxter

@suite("lem-rack-sol", "(x,y) -> (x⋄y, x) solves the set-theoretic Yang-Baxter equation iff ⋄ is left self-distributive",
       lambda c: [1, 2, 3])
def _lem_rack_sol(n):
    f = Fails()
    B = n ** (n * n)
    codes = np.arange(B, dtype=np.int64)
    ops = ((codes[:, None] // n ** np.arange(n * n)) % n).reshape(B, n, n)
    b = np.arange(B)[:, None, None, None]
    x = np.arange(n)
    X, Y, Z = x[None, :, None, None], x[None, None, :, None], x[None, None, None, :]
    shelf = (ops[b, X, ops[b, Y, Z]] == ops[b, ops[b, X, Y], ops[b, X, Z]]).reshape(B, -1).all(axis=1)
    # r = (x⋄y, x); compare (r x id)(id x r)(r x id) with (id x r)(r x id)(id x r) on (X,Y,Z)
    def r12(a, c, d):
        return ops[b, a, c], a, d

    def r23(a, c, d):
        return a, ops[b, c, d], c
    lhs = r12(*r23(*r12(X, Y, Z)))
    rhs = r23(*r12(*r23(X, Y, Z)))
    sol = np.ones(B, dtype=bool)
    for u, v in zip(lhs, rhs):
        sol &= (np.broadcast_to(u, (B, n, n, n)) == np.broadcast_to(v, (B, n, n, n))).reshape(B, -1).all(axis=1)
    bad = np.flatnonzero(shelf != sol)
    f.expect(bad.size == 0, "shelf and Yang-Baxter verdicts differ", None if not bad.size else int(bad[0]))
    return f


@suite("thm-quandle", "each Λ(u,-,-) is an entropic spindle giving a Yang-Baxter solution; commuting u, v satisfy "
       "the mixed entropic law; a ū with Λ(uū,m,n) = n gives a non-degenerate quandle solution",
       lambda c: [("one", x) for x in _hms(c, 1)] + [("pair", p) for p in _hm_pairs(c, 2)])
def _thm_quandle(item):
    f = Fails()
    kind, x = item
    if kind == "pair":
        M, N = x
        for u in range(M.truss.order):
            SM, SN = ybe.spindle_from_hmodule(M, u).o2, ybe.spindle_from_hmodule(N, u).o2
            for m in hm_.hmodule_morphisms(M, N, check=False):
                v = np.array(m.values)
                f.expect(bool((v[SM] == SN[v[:, None], v[None, :]]).all()), "morphism is not a spindle map",
                         (u, m.values))
        return f
    hm = x
    T, L = hm.truss, hm.L3
    n = hm.order
    for u in range(T.order):
        B = ybe.spindle_from_hmodule(hm, u)
        fl = B.flags
        f.expect(fl["spindle"] and fl["entropic"], "not an entropic spindle", u)
        v = ybe.check_ybe(ybe.ybe_map(hm, u))
        f.expect(v.holds, "Yang-Baxter equation fails", (u, v.witness))
        for w in range(T.order):
            pv = ybe.entropic_pair_check(hm, u, w)
            f.expect(pv.status != "contract-violation", "mixed entropic law fails", (u, w))
        for ubar in range(T.order):
            if (L[T.m2[u, ubar]] == np.arange(n)[None, :]).all():
                q = ybe.quandle_from_unit(hm, u, ubar)
                f.expect(q.spindle.flags["quandle"], "not a quandle", (u, ubar))
                f.expect(q.r.nondegenerate, "solution is degenerate", (u, ubar))
    return f


@suite("ex-spindles", "x⋄y = x + f(y - x) is the entropic spindle of Λ(f,x,y) = [f(y),f(x),x], and x ⋄_f y = y ⋄_(id-f) x",
       lambda c: [_group_of(H) for H in _of(c, "heap", 1, 4)])
def _ex_spindles(G):
    f = Fails()
    H = heap_from_group(G)
    E = endomorphism_truss(H)
    M = FiniteTModule(E.truss, H, E.maps)
    hm = hm_.from_module(M)
    for endo in group_homomorphisms(G, G):
        B = ybe.affine_spindle(G, endo)
        u = E.index(endo)
        f.expect(B == ybe.spindle_from_hmodule(hm, u), "affine spindle differs from Λ(f,-,-)", endo)
        dual = tuple(G.minus(x, endo[x]) for x in range(G.order))
        f.expect(bool((ybe.affine_spindle(G, dual).o2 == B.o2.T).all()), "x ⋄_f y differs from y ⋄_(id-f) x", endo)
    return f


def _seq(n, P, Q, R, iota, pi):
    return ybe.ExactSequence(n, P, Q, R, tuple(iota), tuple(pi))


def _gallery_items(c):
    Z = FiniteAbelianGroup.cyclic
    V = Z(2).product(Z(2))
    return [
        ("split", _seq(2, Z(2), V, Z(2), [0, 2], [0, 1, 0, 1]), 2),
        ("split", _seq(2, Z(2), Z(4), Z(2), [0, 2], [0, 1, 0, 1]), 0),
        ("split", _seq(2, Z(1), Z(2), Z(2), [0], [0, 1]), 1),
        ("split", _seq(3, Z(3), Z(3).product(Z(3)), Z(3), [0, 3, 6], [0, 1, 2] * 3), 3),
        ("retract", _seq(2, Z(2), V, Z(2), [0, 2], [0, 1, 0, 1]), 2),
        ("retract", _seq(2, Z(2), Z(4), Z(2), [0, 2], [0, 1, 0, 1]), 0),
        ("retract", _seq(2, Z(2), Z(2), Z(1), [0, 1], [0, 0]), 1),
        ("retract", _seq(3, Z(3), Z(3).product(Z(3)), Z(3), [0, 3, 6], [0, 1, 2] * 3), 3),
    ]


@suite("ex-splittings", "sections of a split epimorphism form a heap of Z/n-modules, empty when the sequence does "
       "not split", lambda c: [x for x in _gallery_items(c) if x[0] == "split"])
def _ex_splittings(item):
    return _gallery_check(item)


@suite("ex-retractions", "retractions of a split monomorphism form a heap of Z/n-modules, empty when the sequence does "
       "not split", lambda c: [x for x in _gallery_items(c) if x[0] == "retract"])
def _ex_retractions(item):
    return _gallery_check(item)


def _gallery_check(item):
    f = Fails()
    kind, seq, expected = item
    g = seq.splittings() if kind == "split" else seq.retractions()
    f.expect(len(g.maps) == expected, "wrong number of maps", (len(g.maps), expected))
    if g.maps:
        f.expect(g.hmodule is not None and g.hmodule.report.valid, "gallery is not a heap of modules")
        for u in range(1, seq.modulus):
            f.expect(ybe.spindle_from_hmodule(g.hmodule, u).flags["quandle"], "unit does not give a quandle", u)
    return f


@suite("ex-derivations", "maps with D(st) = [D(s)t, st, sD(t)] form a heap, of modules when T is commutative",
       lambda c: [("corpus", T) for T in _of(c, "truss", 1, 3)] + [("T2", truss_from_ring(FiniteRing.zmod(2)))])
def _ex_derivations(item):
    f = Fails()
    kind, T = item
    d = hm_.derivations(T)
    f.expect(d.heap.report.valid, "derivations do not form a heap")
    if kind == "T2":
        f.expect(d.maps.tolist() == [[0, 1]], "derivations of T(Z/2) are not just the identity", d.maps.tolist())
    if T.commutative and len(d.maps):
        f.expect(d.hmodule is not None and d.hmodule.report.valid, "derivations are not a heap of modules")
    return f


def suite_names():
    return list(SUITES)
