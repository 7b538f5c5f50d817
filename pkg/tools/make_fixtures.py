"""Regenerate the bundled structure files under src/heapmod/fixtures."""
import os

import numpy as np

from heapmod import affine, formats, hmod, ybe
from heapmod.heaps import FiniteAbelianGroup, FiniteHeap, heap_from_group
from heapmod.modules import FiniteTModule, module_to_tgroup, regular_module
from heapmod.trusses import FiniteRing, FiniteTruss, truss_from_ring

ROOT = os.path.join(os.path.dirname(__file__), "..", "src", "heapmod", "fixtures")


def save(sub, name, obj, label):
    os.makedirs(os.path.join(ROOT, sub), exist_ok=True)
    formats.save_file(obj, os.path.join(ROOT, sub, name), label)


def main():
    Z = FiniteAbelianGroup.cyclic
    T2 = truss_from_ring(FiniteRing.zmod(2))
    T3 = truss_from_ring(FiniteRing.zmod(3))
    T4 = truss_from_ring(FiniteRing.zmod(4))
    V = Z(2).product(Z(2))
    hm2 = hmod.from_module(regular_module(T2))
    hm3 = hmod.from_module(regular_module(T3))

    save("valid", "group-z2xz2.json", V, "Klein four group")
    save("valid", "heap-z3.json", heap_from_group(Z(3)), "heap of Z/3")
    save("valid", "ring-z4.json", FiniteRing.zmod(4), "Z/4")
    save("valid", "truss-z2.json", T2, "T(Z/2)")
    save("valid", "module-regular-z3.json", regular_module(T3), "T(Z/3) acting on itself")
    save("valid", "tgroup-regular-z3.json", module_to_tgroup(regular_module(T3), 0), "Z/3 as a T(Z/3)-group")
    save("valid", "hmodule-regular-z2.json", hm2, "heap of modules of the regular T(Z/2)-module")
    save("valid", "hmodule-regular-z3.json", hm3, "heap of modules of the regular T(Z/3)-module")
    save("valid", "affine-z3.json", affine.psi(hm3), "translations of Z/3 acting on Z/3")
    save("valid", "spindle-dihedral-z3.json", ybe.spindle_from_hmodule(hm3, 2), "x ⋄ y = 2x - y on Z/3")
    save("valid", "ybe-dihedral-z3.json", ybe.quandle_from_unit(hm3, 2, 2).r, "quandle solution on Z/3")
    save("valid", "sequence-split-z2.json",
         ybe.ExactSequence(2, Z(2), V, Z(2), (0, 2), (0, 1, 0, 1)), "Z/2 -> Z/2+Z/2 -> Z/2")
    save("valid", "sequence-nonsplit-z4.json",
         ybe.ExactSequence(2, Z(2), Z(4), Z(2), (0, 2), (0, 1, 0, 1)), "Z/2 -> Z/4 -> Z/2")

    # corrupted: each fails exactly one mathematical check
    H4 = heap_from_group(Z(4))
    parity = [p if p % 2 == 0 else m for a in range(4) for p in range(4) for m in range(4)]
    save("corrupt", "hmodule-parity.json", FiniteHeapOfModules(T4, H4, parity),
         "Λ(a,p,m) = p if p is even else m: fails base change")
    save("corrupt", "truss-nonassociative.json", FiniteTruss(heap_from_group(Z(2)), [1, 0, 1, 0]),
         "x·y = y + 1 on Z/2 distributes but is not associative")
    bad_heap = heap_from_group(Z(3)).ternary.copy()
    bad_heap[1 * 9 + 1 * 3 + 2] = 0
    save("corrupt", "heap-broken-z3.json", FiniteHeap(3, bad_heap), "[1,1,2] changed to 0")
    save("corrupt", "module-projection.json", FiniteTModule(T3, heap_from_group(Z(3)),
                                                           [t for t in range(3) for m in range(3)]),
         "t·m = t is not associative over T(Z/3)")
    save("corrupt", "ybe-sum.json",
         ybe.YBEPairMap(2, [v for x in range(2) for y in range(2) for v in ((x + y) % 2, x)]),
         "(x, y) -> (x + y, x) on Z/2: x + y is not self-distributive")
    rho = np.zeros((3, 3), dtype=np.int64)
    rho[:] = np.arange(3)
    save("corrupt", "affine-trivial-action.json",
         affine.FiniteTAffineSpace(3, module_to_tgroup(regular_module(T3), 0), rho.ravel()),
         "every translation acts as the identity")


from heapmod.hmod import FiniteHeapOfModules  # noqa: E402

if __name__ == "__main__":
    main()
