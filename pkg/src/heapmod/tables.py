"""Flat integer tables and the frozen-structure base class."""
import dataclasses

import numpy as np

from .errors import StructuralError


def as_table(values, length, bound, what):
    """Coerce to a read-only flat int64 array of the given length with entries in [0, bound)."""
    try:
        arr = np.array(values, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"{what}: not an integer table ({exc})") from None
    arr = arr.ravel()
    if arr.size != length:
        raise StructuralError(f"{what}: expected {length} entries, got {arr.size}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        bad = int(np.argmax((arr < 0) | (arr >= bound)))
        raise StructuralError(f"{what}: entry {bad} = {int(arr[bad])} outside [0, {bound})")
    arr.flags.writeable = False
    return arr


def as_index(value, bound, what):
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise StructuralError(f"{what}: not an integer") from None
    if not 0 <= v < bound:
        raise StructuralError(f"{what} = {v} outside [0, {bound})")
    return v


def as_mask(order, subset):
    """Boolean membership array from a subset given as iterable, bitmask int, or mask."""
    if isinstance(subset, np.ndarray) and subset.dtype == bool:
        if subset.shape != (order,):
            raise StructuralError("subset mask has wrong length")
        return subset
    mask = np.zeros(order, dtype=bool)
    if isinstance(subset, (int, np.integer)) and not isinstance(subset, bool):
        subset = int(subset)
        if subset < 0 or subset >> order:
            raise StructuralError("bitmask has bits outside the carrier")
        for i in range(order):
            mask[i] = (subset >> i) & 1
        return mask
    for x in subset:
        mask[as_index(x, order, "subset element")] = True
    return mask


def encode_subset(order, subset):
    """Bitmask for carriers up to 64 elements, sorted tuple above."""
    mask = as_mask(order, subset)
    idx = np.flatnonzero(mask)
    if order <= 64:
        return sum(1 << int(i) for i in idx)
    return tuple(int(i) for i in idx)


def elements(mask):
    return [int(i) for i in np.flatnonzero(mask)]


def _key(value):
    if isinstance(value, np.ndarray):
        return ("nd", value.shape, value.tobytes())
    if isinstance(value, Frozen):
        return value.key()
    if isinstance(value, (tuple, list)):
        return tuple(_key(v) for v in value)
    return value


class Frozen:
    """Equality and hashing by field contents for frozen dataclasses holding arrays."""

    def key(self):
        return (type(self).__name__,) + tuple(
            _key(getattr(self, f.name)) for f in dataclasses.fields(self) if f.compare)

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())
