"""Enumeration of small heaps, trusses, modules and heaps of modules, and corpus generation."""
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation
from .heaps import (FiniteAbelianGroup, FiniteHeap, as_budget, empty_heap, generators,
                    heap_from_group, heap_morphisms)
from .hmod import from_module
from .iso import canonical_form
from .modules import FiniteTModule
from .trusses import FiniteTruss, endomorphism_truss, truss_morphisms


def _factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k, largest=None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_group_decompositions(n):
    """Cyclic factor orders (prime powers, grouped by prime) for each abelian group of order n."""
    if n == 1:
        return [()]
    per_prime = [[tuple(p ** e for e in part) for part in _partitions(k)] for p, k in sorted(_factor(n).items())]
    return [sum(choice, ()) for choice in itertools.product(*per_prime)]


def enumerate_abelian_groups(n):
    if n == 0:
        return []
    return [FiniteAbelianGroup.from_decomposition(d) if d else FiniteAbelianGroup.cyclic(1)
            for d in abelian_group_decompositions(n)]


def enumerate_abelian_heaps(n):
    """One heap per isomorphism class, in the order of the cyclic decompositions."""
    if n == 0:
        return [empty_heap()]
    return [heap_from_group(G) for G in enumerate_abelian_groups(n)]


# ----------------------------------------------------------------------------- trusses
#
# A multiplication distributes over the heap on both sides exactly when every row and every
# column is a heap endomorphism.  Rows are picked from End(H) at the affine basis {0} + generators
# of the retract at 0; column affinity then fixes every other row, and the remaining edges of the
# generator graph are consistency checks.  Associativity is filtered in numpy batches.

@dataclass(frozen=True)
class _TrussPlan:
    heap: FiniteHeap
    ends: np.ndarray           # |End| x n
    basis: tuple               # basis points, 0 first
    steps: tuple               # (x, g, y, assign) edges y = x + g


def _truss_plan(H, budget):
    n = H.order
    G = FiniteAbelianGroup(n, H.t3[:, 0, :], 0, H.t3[0, :, 0])
    gens = generators(G)
    ends = np.array(heap_morphisms(H, H, budget), dtype=np.int64)
    basis = (0,) + tuple(gens)
    seen = set(basis)
    steps, queue = [], list(basis)
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = G.plus(x, g)
            steps.append((x, g, y, y not in seen))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return _TrussPlan(H, ends, basis, tuple(steps))


def _truss_batch(plan, combos):
    """Associative bi-affine tables among the given basis-row choices, as flat tuples."""
    H, E = plan.heap.t3, plan.ends
    n = plan.heap.order
    B = len(combos)
    rows = np.zeros((B, n, n), dtype=np.int64)
    combos = np.asarray(combos, dtype=np.int64).reshape(B, -1)
    for j, p in enumerate(plan.basis):
        rows[:, p] = E[combos[:, j]]
    good = np.ones(B, dtype=bool)
    for x, g, y, assign in plan.steps:
        val = H[rows[:, x], rows[:, 0], rows[:, g]]
        if assign:
            rows[:, y] = val
        else:
            good &= (rows[:, y] == val).all(axis=1)
    rows = rows[good]
    if not len(rows):
        return []
    b = np.arange(len(rows))[:, None, None, None]
    x = np.arange(n)
    left = rows[b, rows[:, :, :, None], x[None, None, None, :]]
    right = rows[b, x[None, :, None, None], rows[:, None, :, :]]
    keep = (left == right).reshape(len(rows), -1).all(axis=1)
    return [tuple(int(v) for v in r.ravel()) for r in rows[keep]]


def _truss_task(args):
    plan, first, chunk = args
    k = len(plan.basis)
    out = []
    rest = itertools.product(range(len(plan.ends)), repeat=k - 1)
    while True:
        block = list(itertools.islice(rest, chunk))
        if not block:
            break
        out.extend(_truss_batch(plan, [(first,) + c for c in block]))
    return out


def _pool_map(fn, tasks, jobs):
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, tasks))
    return [fn(t) for t in tasks]


def labeled_truss_tables(H, budget=None, jobs=1, chunk=8192):
    """Every multiplication table making the heap H a truss, sorted."""
    budget = as_budget(budget)
    n = H.order
    if n == 0:
        return [()]
    plan = _truss_plan(H, budget)
    budget.spend(len(plan.ends) ** len(plan.basis))
    tasks = [(plan, i, chunk) for i in range(len(plan.ends))]
    found = [t for part in _pool_map(_truss_task, tasks, jobs) for t in part]
    return sorted(found)


def _dedupe(objs):
    """Keep one object per canonical form, sorted by canonical key."""
    best = {}
    for obj in objs:
        cf = canonical_form(obj)
        best.setdefault((cf.kind, cf.orders, cf.key), obj)
    return [best[k] for k in sorted(best)]


def enumerate_trusses(n, up_to_iso=True, budget=None, jobs=1):
    budget = as_budget(budget)
    out = []
    for H in enumerate_abelian_heaps(n):
        for mul in labeled_truss_tables(H, budget, jobs):
            T = FiniteTruss(H, mul)
            if not T.report.valid:
                raise ContractViolation("truss search produced an invalid table: " + T.report.failures[0].detail)
            out.append(T)
    return _dedupe(out) if up_to_iso else out


# ----------------------------------------------------------------------------- modules

def _actions(T, H, budget, fix_zero=False):
    """Truss morphisms T -> E(H), as |T| x |H| action tables."""
    if H.order == 0:
        return [np.zeros(0, dtype=np.int64)]
    E = endomorphism_truss(H, budget)
    out = []
    for f in truss_morphisms(T, E.truss, budget):
        act = E.maps[list(f)] if T.order else np.zeros((0, H.order), dtype=np.int64)
        if fix_zero and T.order and (act[:, 0] != 0).any():
            continue
        out.append(act)
    return out


def enumerate_modules(T, M_order, up_to_iso=True, budget=None):
    budget = as_budget(budget)
    out = []
    for H in enumerate_abelian_heaps(M_order):
        for act in _actions(T, H, budget):
            M = FiniteTModule(T, H, act)
            if not M.report.valid:
                raise ContractViolation("module search produced an invalid action")
            out.append(M)
    return _dedupe(out) if up_to_iso else out


def enumerate_hmodules(T, M_order, up_to_iso=True, budget=None):
    """Every heap of modules arises from a T-group (a module with absorber 0) on a representative heap."""
    budget = as_budget(budget)
    out = []
    for H in enumerate_abelian_heaps(M_order):
        for act in _actions(T, H, budget, fix_zero=True):
            hm = from_module(FiniteTModule(T, H, act))
            if not hm.report.valid:
                raise ContractViolation("from_module produced an invalid heap of modules")
            out.append(hm)
    return _dedupe(out) if up_to_iso else out


# ----------------------------------------------------------------------------- corpus

DEFAULT_LIMITS = {"heap": 8, "truss": 3, "module": (3, 3), "hmodule": (2, 4), "affine": (2, 4)}


@dataclass
class CorpusEntry:
    kind: str
    order: int
    obj: object
    label: str

    @property
    def filename(self):
        from .formats import dumps
        import hashlib
        digest = hashlib.sha256(dumps(self.obj).encode()).hexdigest()[:16]
        return f"{self.kind}-{self.order}-{digest}.json"


@dataclass
class Corpus:
    entries: list = field(default_factory=list)

    def of_kind(self, kind):
        return [e.obj for e in self.entries if e.kind == kind]

    def counts(self):
        counts = {}
        for e in self.entries:
            counts.setdefault(e.kind, {}).setdefault(str(e.order), 0)
            counts[e.kind][str(e.order)] += 1
        return counts


def _heap_task(n):
    return [CorpusEntry("heap", n, H, f"heap order {n} #{i}") for i, H in enumerate(enumerate_abelian_heaps(n))]


def _truss_corpus_task(n):
    return [CorpusEntry("truss", n, T, f"truss order {n} #{i}") for i, T in enumerate(enumerate_trusses(n))]


def _module_task(args):
    kind, T, tlabel, m = args
    if kind == "module":
        objs = enumerate_modules(T, m)
    else:
        objs = enumerate_hmodules(T, m)
    return [CorpusEntry(kind, m, x, f"{kind} order {m} over {tlabel} #{i}") for i, x in enumerate(objs)]


def corpus_generate(limits=None, out_dir=None, jobs=1):
    """All structures within the limits, deterministic in content and order whatever the worker count."""
    from .affine import psi
    limits = DEFAULT_LIMITS if limits is None else limits
    entries = []
    if "heap" in limits:
        for part in _pool_map(_heap_task, list(range(limits["heap"] + 1)), jobs):
            entries.extend(part)
    tmax = max([limits.get("truss", -1)] + [limits[k][0] for k in ("module", "hmodule", "affine") if k in limits])
    trusses = {}
    if tmax >= 0:
        parts = _pool_map(_truss_corpus_task, list(range(tmax + 1)), jobs)
        for n, part in enumerate(parts):
            trusses[n] = part
            if n <= limits.get("truss", -1):
                entries.extend(part)
    hm_cache = {}
    for kind in ("module", "hmodule"):
        wanted = limits.get(kind) or (limits.get("affine") if kind == "hmodule" else None)
        if not wanted:
            continue
        tl, ml = wanted
        tasks = [(kind, e.obj, e.label, m) for n in range(1, tl + 1) for e in trusses[n] for m in range(ml + 1)]
        parts = _pool_map(_module_task, tasks, jobs)
        found = [x for part in parts for x in part]
        if kind == "hmodule":
            hm_cache = found
            if "hmodule" not in limits:
                continue
        entries.extend(found)
    if "affine" in limits:
        tl, ml = limits["affine"]
        for e in hm_cache:
            if e.obj.truss.order <= tl and e.order <= ml:
                entries.append(CorpusEntry("affine", e.order, psi(e.obj), "psi of " + e.label))
    corpus = Corpus(entries)
    if out_dir is not None:
        write_corpus(corpus, out_dir)
    return corpus


def write_corpus(corpus, out_dir):
    from .formats import dumps
    os.makedirs(out_dir, exist_ok=True)
    files = []
    for e in corpus.entries:
        name = e.filename
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(dumps(e.obj, label=e.label))
        files.append(name)
    manifest = {"counts": corpus.counts(), "files": files}
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_corpus(path):
    """A corpus directory written by write_corpus, or the word 'default' for the in-memory default corpus."""
    from .formats import load_file
    if path == "default":
        return corpus_generate()
    with open(os.path.join(path, "manifest.json"), encoding="utf-8") as fh:
        manifest = json.load(fh)
    entries = []
    for name in manifest["files"]:
        obj, label = load_file(os.path.join(path, name), with_label=True)
        kind, order = name.split("-")[:2]
        entries.append(CorpusEntry(kind, int(order), obj, label))
    return Corpus(entries)
