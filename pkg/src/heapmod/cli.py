"""Command line: verify, construct, enumerate, theorem suites, YBE export.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input, 3 budget exceeded.
"""
import argparse
import sys

from . import affine, enumeration, formats, hmod, modules, theorems, trusses, ybe
from .errors import BudgetExceeded, HeapModError, StructuralError
from .heaps import as_budget, heap_from_group
from .trusses import FiniteTruss

RECIPES = ("from-ring", "from-group", "induced", "cross-product", "endo-truss", "from-module",
           "spindle", "ybe", "derivations", "splittings", "phi", "psi")


def _out(text=""):
    sys.stdout.write(text + "\n")


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise StructuralError(f"this recipe needs --{name}")
    return v


def _expect(obj, kinds, recipe):
    if not isinstance(obj, kinds):
        raise StructuralError(f"{recipe} does not accept a {type(obj).__name__}")
    return obj


# ----------------------------------------------------------------------------- verify

def _verify(obj):
    """(ok, lines) for any structure file."""
    if isinstance(obj, ybe.YBEPairMap):
        v = ybe.check_ybe(obj)
        lines = [f"ybe: {'solution' if v.holds else 'NOT a solution'}"]
        if not v.holds:
            lines.append(f"  witness {v.witness}: {v.detail}")
        lines.append(f"  bijective = {obj.bijective}")
        lines.append(f"  nondegenerate = {obj.nondegenerate}")
        return v.holds, lines
    if isinstance(obj, ybe.BinaryStructure):
        r = obj.classification
        return True, [r.render()]
    if isinstance(obj, ybe.ExactSequence):
        maps, reason = ybe._exact_or_reason(obj.P, obj.Q, obj.R, obj.iota, obj.pi)
        if maps is None:
            return False, ["sequence: INVALID", "  " + reason]
        return True, ["sequence: exact"]
    r = obj.report
    return r.valid, [r.render()]


def cmd_verify(args):
    obj = formats.load_file(args.file)
    good, lines = _verify(obj)
    for line in lines:
        _out(line)
    return 0 if good else 1


# ----------------------------------------------------------------------------- construct

def _construct(recipe, obj, args, budget):
    if recipe == "from-ring":
        return trusses.truss_from_ring(_valid(_expect(obj, trusses.FiniteRing, recipe)))
    if recipe == "from-group":
        from .heaps import FiniteAbelianGroup
        return heap_from_group(_valid(_expect(obj, FiniteAbelianGroup, recipe)))
    if recipe == "induced":
        return modules.induced_action(_valid(_expect(obj, modules.FiniteTModule, recipe)), _need(args, "e"))
    if recipe == "cross-product":
        return hmod.cross_product(_valid(_expect(obj, hmod.FiniteHeapOfModules, recipe)), _need(args, "e")).truss
    if recipe == "endo-truss":
        from .heaps import FiniteHeap
        x = _valid(_expect(obj, (FiniteHeap, modules.FiniteTGroup), recipe))
        if isinstance(x, FiniteHeap):
            return trusses.endomorphism_truss(x, budget).truss
        return hmod.endo_truss_ET(x, budget).truss
    if recipe == "from-module":
        return hmod.from_module(_valid(_expect(obj, modules.FiniteTModule, recipe)))
    if recipe == "spindle":
        return ybe.spindle_from_hmodule(_valid(_expect(obj, hmod.FiniteHeapOfModules, recipe)), _need(args, "u"))
    if recipe == "ybe":
        hm = _valid(_expect(obj, hmod.FiniteHeapOfModules, recipe))
        if args.ubar is not None:
            return ybe.quandle_from_unit(hm, _need(args, "u"), args.ubar).r
        return ybe.ybe_map(hm, _need(args, "u"))
    if recipe == "derivations":
        d = hmod.derivations(_valid(_expect(obj, FiniteTruss, recipe)), budget)
        return d.hmodule if d.hmodule is not None else d.heap
    if recipe == "splittings":
        seq = _expect(obj, ybe.ExactSequence, recipe)
        if args.n is not None and args.n != seq.modulus:
            seq = ybe.ExactSequence(args.n, seq.P, seq.Q, seq.R, seq.iota, seq.pi)
        g = seq.retractions(budget) if args.retractions else seq.splittings(budget)
        what = "retractions" if args.retractions else "sections"
        if not g.maps:
            _out(f"no {what}" + (f": {g.reason}" if g.reason else ""))
            from .heaps import empty_heap
            T = trusses.truss_from_ring(trusses.FiniteRing.zmod(seq.modulus))
            return hmod.FiniteHeapOfModules(T, empty_heap(), [])
        _out(f"{len(g.maps)} {what}")
        for i, m in enumerate(g.maps):
            _out(f"  {i}: {list(m)}")
        return g.hmodule
    if recipe == "phi":
        return affine.phi(_valid(_expect(obj, affine.FiniteTAffineSpace, recipe)))
    if recipe == "psi":
        return affine.psi(_valid(_expect(obj, hmod.FiniteHeapOfModules, recipe)))
    raise StructuralError(f"unknown recipe {recipe!r}")


def _valid(obj):
    obj.report.require()
    return obj


def cmd_construct(args):
    obj = formats.load_file(args.file)
    result = _construct(args.recipe, obj, args, as_budget(args.budget))
    text = formats.dumps(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _out(f"wrote {formats.to_dict(result)['kind']} to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------------- enumerate

def _parse_order(text):
    parts = [int(p) for p in str(text).replace(",", " ").split()]
    if not parts or any(p < 0 for p in parts):
        raise StructuralError(f"bad --order {text!r}")
    return parts


def cmd_enumerate(args):
    orders = _parse_order(args.order)
    budget = as_budget(args.budget)
    kind = args.kind
    if kind == "heap":
        objs = enumeration.enumerate_abelian_heaps(orders[0])
    elif kind == "group":
        objs = enumeration.enumerate_abelian_groups(orders[0])
    elif kind == "truss":
        objs = enumeration.enumerate_trusses(orders[0], up_to_iso=args.up_to_iso, budget=budget, jobs=args.jobs)
    elif kind in ("module", "hmodule"):
        if len(orders) != 2:
            raise StructuralError(f"--kind {kind} needs --order 'T,M' (truss order, carrier order)")
        fn = enumeration.enumerate_modules if kind == "module" else enumeration.enumerate_hmodules
        objs = []
        for T in enumeration.enumerate_trusses(orders[0], budget=budget, jobs=args.jobs):
            objs.extend(fn(T, orders[1], up_to_iso=args.up_to_iso, budget=budget))
    else:
        raise StructuralError(f"cannot enumerate kind {kind!r}")
    _out(f"{len(objs)} {kind} structure(s) of order {args.order}" + (" up to isomorphism" if args.up_to_iso else ""))
    if args.out:
        kind_order = orders[-1]
        entries = [enumeration.CorpusEntry(kind, kind_order, x, f"{kind} #{i}") for i, x in enumerate(objs)]
        enumeration.write_corpus(enumeration.Corpus(entries), args.out)
        _out(f"wrote {len(entries)} file(s) to {args.out}")
    return 0


def cmd_corpus(args):
    enumeration.corpus_generate(out_dir=args.out, jobs=args.jobs)
    _out(f"wrote the default corpus to {args.out}")
    return 0


# ----------------------------------------------------------------------------- theorem

def cmd_theorem(args):
    if args.list or not args.suite:
        for name, s in theorems.SUITES.items():
            _out(f"{name}: {s.statement}")
        return 0
    names = list(theorems.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in theorems.SUITES:
            raise StructuralError(f"unknown suite {name!r}; see 'theorem --list'")
    corpus = enumeration.load_corpus(args.corpus)
    status = 0
    for name in names:
        r = theorems.run_suite(name, corpus, jobs=args.jobs)
        _out(r.render(limit=10))
        if not r.passed:
            status = 1
    return status


# ----------------------------------------------------------------------------- export

def cmd_export_ybe(args):
    obj = formats.load_file(args.file)
    if isinstance(obj, hmod.FiniteHeapOfModules):
        obj = ybe.ybe_map(_valid(obj), _need(args, "u"))
    if not isinstance(obj, ybe.YBEPairMap):
        raise StructuralError("export-ybe needs a ybe file, or a heap of modules with --u")
    text = ybe.export_ybe_text(obj)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--budget", type=int, default=None, help="search budget (candidate count)")

    p = argparse.ArgumentParser(prog="heapmod", description="Finite heaps, trusses and heaps of modules.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="validate a structure file and print its report")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", parents=[common], help="apply a named constructor to a structure file")
    c.add_argument("recipe", choices=RECIPES)
    c.add_argument("file")
    c.add_argument("-o", "--out")
    c.add_argument("--e", type=int)
    c.add_argument("--u", type=int)
    c.add_argument("--ubar", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--retractions", action="store_true", help="splittings recipe: retractions of iota instead")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", parents=[common], help="list all structures of a kind and order")
    e.add_argument("--kind", required=True, choices=("group", "heap", "truss", "module", "hmodule"))
    e.add_argument("--order", required=True, help="N, or 'T,M' for module and hmodule")
    e.add_argument("--up-to-iso", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("corpus", parents=[common], help="write the default corpus to a directory")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_corpus)

    t = sub.add_parser("theorem", parents=[common], help="run a theorem suite over a corpus")
    t.add_argument("suite", nargs="?", help="suite name, or 'all'")
    t.add_argument("--corpus", default="default", help="corpus directory, or 'default'")
    t.add_argument("--list", action="store_true")
    t.set_defaults(func=cmd_theorem)

    x = sub.add_parser("export-ybe", parents=[common], help="print a Yang-Baxter map as text")
    x.add_argument("file")
    x.add_argument("--format", default="text", choices=("text",))
    x.add_argument("--u", type=int)
    x.add_argument("-o", "--out")
    x.set_defaults(func=cmd_export_ybe)
    return p


def main(argv=None):
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        _out(f"budget exceeded: {exc}")
        return 3
    except HeapModError as exc:
        _out(f"error: {exc}")
        w = getattr(exc, "witness", None)
        if w is not None:
            _out(f"witness: {w}")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
