from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import AxiomError


@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""

    def render(self):
        if self.passed:
            return f"  [pass] {self.name}"
        out = f"  [FAIL] {self.name}"
        if self.witness is not None:
            out += f" at {self.witness}"
        if self.detail:
            out += f": {self.detail}"
        return out


@dataclass
class ValidationReport:
    kind: str
    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def valid(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.valid

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def render(self):
        head = f"{self.kind}: {'valid' if self.valid else 'INVALID'}"
        lines = [head] + [c.render() for c in self.checks]
        for k, v in self.info.items():
            if isinstance(v, np.ndarray):
                v = v.tolist()
            lines.append(f"  {k} = {v}")
        return "\n".join(lines)

    def require(self):
        if not self.valid:
            first = self.failures[0]
            raise AxiomError(f"{self.kind} fails {first.name}: {first.detail}",
                             report=self, witness=first.witness)
        return self


def first_true(mask):
    """Lowest row-major index tuple where mask is true, or None."""
    flat = np.asarray(mask).ravel()
    if flat.size == 0:
        return None
    i = int(np.argmax(flat))
    if not flat[i]:
        return None
    return tuple(int(x) for x in np.unravel_index(i, np.shape(mask)))


def law(name, lhs, rhs, render=None):
    """Compare two broadcast arrays; the witness is the first differing index."""
    bad = np.asarray(lhs) != np.asarray(rhs)
    w = first_true(bad)
    if w is None:
        return Check(name, True)
    detail = render(w) if render else ""
    return Check(name, False, w, detail)


def ok(name, info: Any = None):
    return Check(name, True, None, "" if info is None else str(info))
