"""JSON structure files: flat integer tables with explicit order fields."""
import json

from .affine import FiniteTAffineSpace
from .errors import StructuralError
from .heaps import FiniteAbelianGroup, FiniteHeap
from .hmod import FiniteHeapOfModules
from .modules import FiniteTGroup, FiniteTModule
from .trusses import FiniteRing, FiniteTruss
from .ybe import BinaryStructure, ExactSequence, YBEPairMap

KINDS = ("group", "heap", "truss", "ring", "module", "tgroup", "hmodule", "affine", "spindle", "ybe", "sequence")


def _ints(a):
    return [int(v) for v in a]


def _group(G):
    return {"order": G.order, "add": _ints(G.add), "zero": int(G.zero), "neg": _ints(G.neg)}


def _truss(T):
    return {"order": T.order, "ternary": _ints(T.heap.ternary), "mul": _ints(T.mul)}


def to_dict(obj):
    if isinstance(obj, FiniteAbelianGroup):
        return {"kind": "group", **_group(obj)}
    if isinstance(obj, FiniteHeap):
        return {"kind": "heap", "order": obj.order, "ternary": _ints(obj.ternary)}
    if isinstance(obj, FiniteTruss):
        return {"kind": "truss", **_truss(obj)}
    if isinstance(obj, FiniteRing):
        return {"kind": "ring", **_group(obj.group), "mul": _ints(obj.mul), "unit": obj.unit}
    if isinstance(obj, FiniteTModule):
        return {"kind": "module", "truss": _truss(obj.truss), "order": obj.order,
                "ternary": _ints(obj.heap.ternary), "action": _ints(obj.action)}
    if isinstance(obj, FiniteTGroup):
        return {"kind": "tgroup", "truss": _truss(obj.truss), **_group(obj.group), "action": _ints(obj.action)}
    if isinstance(obj, FiniteHeapOfModules):
        return {"kind": "hmodule", "truss": _truss(obj.truss), "order": obj.order,
                "ternary": _ints(obj.heap.ternary), "lambda": _ints(obj.lam)}
    if isinstance(obj, FiniteTAffineSpace):
        g = to_dict(obj.group)
        del g["kind"]
        return {"kind": "affine", "carrier": obj.carrier, "group": g, "rho": _ints(obj.rho)}
    if isinstance(obj, BinaryStructure):
        return {"kind": "spindle", "order": obj.order, "op": _ints(obj.op)}
    if isinstance(obj, YBEPairMap):
        return {"kind": "ybe", "order": obj.order, "r": _ints(obj.r)}
    if isinstance(obj, ExactSequence):
        return {"kind": "sequence", "modulus": obj.modulus, "P": _group(obj.P), "Q": _group(obj.Q),
                "R": _group(obj.R), "iota": _ints(obj.iota), "pi": _ints(obj.pi)}
    raise StructuralError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, label=None):
    d = to_dict(obj)
    if label is not None:
        d["label"] = label
    return json.dumps(d, sort_keys=True, ensure_ascii=False) + "\n"


def _get(d, key, typ=None):
    if not isinstance(d, dict) or key not in d:
        raise StructuralError(f"missing field {key!r}")
    v = d[key]
    if typ is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise StructuralError(f"field {key!r} must be an integer")
    if typ is list and (not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v)):
        raise StructuralError(f"field {key!r} must be a list of integers")
    if typ is dict and not isinstance(v, dict):
        raise StructuralError(f"field {key!r} must be an object")
    return v


def _order(d, key="order"):
    n = _get(d, key, int)
    if n < 0:
        raise StructuralError(f"field {key!r} is negative")
    return n


def _parse_group(d):
    return FiniteAbelianGroup(_order(d), _get(d, "add", list), _get(d, "zero", int), _get(d, "neg", list))


def _parse_truss(d):
    n = _order(d)
    return FiniteTruss(FiniteHeap(n, _get(d, "ternary", list)), _get(d, "mul", list))


def from_dict(d):
    kind = _get(d, "kind")
    if kind == "group":
        return _parse_group(d)
    if kind == "heap":
        return FiniteHeap(_order(d), _get(d, "ternary", list))
    if kind == "truss":
        return _parse_truss(d)
    if kind == "ring":
        unit = d.get("unit")
        if unit is not None and (isinstance(unit, bool) or not isinstance(unit, int)):
            raise StructuralError("field 'unit' must be an integer or null")
        return FiniteRing(_parse_group(d), _get(d, "mul", list), unit)
    if kind == "module":
        T = _parse_truss(_get(d, "truss", dict))
        return FiniteTModule(T, FiniteHeap(_order(d), _get(d, "ternary", list)), _get(d, "action", list))
    if kind == "tgroup":
        T = _parse_truss(_get(d, "truss", dict))
        return FiniteTGroup(_parse_group(d), T, _get(d, "action", list))
    if kind == "hmodule":
        T = _parse_truss(_get(d, "truss", dict))
        return FiniteHeapOfModules(T, FiniteHeap(_order(d), _get(d, "ternary", list)), _get(d, "lambda", list))
    if kind == "affine":
        g = dict(_get(d, "group", dict), kind="tgroup")
        return FiniteTAffineSpace(_order(d, "carrier"), from_dict(g), _get(d, "rho", list))
    if kind == "spindle":
        return BinaryStructure(_order(d), _get(d, "op", list))
    if kind == "ybe":
        return YBEPairMap(_order(d), _get(d, "r", list))
    if kind == "sequence":
        n = _get(d, "modulus", int)
        if n < 1:
            raise StructuralError("modulus must be positive")
        return ExactSequence(n, _parse_group(_get(d, "P", dict)), _parse_group(_get(d, "Q", dict)),
                             _parse_group(_get(d, "R", dict)), tuple(_get(d, "iota", list)),
                             tuple(_get(d, "pi", list)))
    raise StructuralError(f"unknown kind {kind!r}")


def loads(text, with_label=False):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"not valid JSON: {exc}") from None
    obj = from_dict(d)
    return (obj, d.get("label")) if with_label else obj


def load_file(path, with_label=False):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StructuralError(f"cannot read {path}: {exc}") from None
    return loads(text, with_label)


def save_file(obj, path, label=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, label))
