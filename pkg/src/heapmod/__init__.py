"""Finite heaps, trusses, modules, heaps of modules, affine spaces and Yang-Baxter maps."""
from importlib.resources import files

from .errors import (AxiomError, BudgetExceeded, ContractViolation, HeapModError, PreconditionError,
                     StructuralError)
from .heaps import FiniteAbelianGroup, FiniteHeap, heap_from_group, retract
from .hmod import FiniteHeapOfModules, from_module, to_module
from .modules import FiniteTGroup, FiniteTModule
from .trusses import FiniteRing, FiniteTruss, truss_from_ring

__version__ = "0.1.0"

__all__ = ["AxiomError", "BudgetExceeded", "ContractViolation", "HeapModError", "PreconditionError",
           "StructuralError", "FiniteAbelianGroup", "FiniteHeap", "heap_from_group", "retract",
           "FiniteHeapOfModules", "from_module", "to_module", "FiniteTGroup", "FiniteTModule", "FiniteRing",
           "FiniteTruss", "truss_from_ring", "fixtures_dir"]


def fixtures_dir():
    """Directory of the bundled structure files (subdirectories valid/ and corrupt/)."""
    return files("heapmod") / "fixtures"
