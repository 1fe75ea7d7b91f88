"""
Differentiators and the cover
=============================

Find the smallest l for which the differentiators Omega^(l) kill a module,
then compute windowed weight spaces of the cover and compare them with the
spanning-set bound.
"""

import warnings

from qtorus import ModuleDescriptor, QMatrix, QuantumTorus, left_regular_module, trivial_module, young_module
from qtorus.cover import cover_weight_space, minimal_annihilating_l, rewriting_identity_sweep

C1 = QuantumTorus(QMatrix.normal_form(2, [2]))
W = left_regular_module(C1)

# b = 1 is special: the quadratic part of Omega^(2) vanishes for the natural module
for lam, b in (((), 0), ((1,), 1), ((1,), 5)):
    M = ModuleDescriptor(C1, young_module(lam, 2, b), W, ("1/2", "1/3"))
    print("V=%s b=%d  minimal l = %s" % (lam or "trivial", b, minimal_annihilating_l(M, 1, 4)))

M = ModuleDescriptor(C1, young_module((1,), 2, 1), W, (0, 0))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    rep = cover_weight_space((1, 0), M, 8, l=2)
print("cover weight space at (1,0): dim", rep["dimension"], "stable:", rep["stable"],
      "bound:", rep["bound"])

# the rewriting identity that drives the bound, on a small window
sweep = rewriting_identity_sweep(M, radius=1)
print("rewriting identity:", sweep["counts"])

# Witt case: the left factor is all of C_q
C5 = QuantumTorus(QMatrix.ones(2))
F = ModuleDescriptor(C5, young_module((), 2, 0), trivial_module(C5), (0, 0))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    rep = cover_weight_space((1, 0), F, 4, l=2, full=True)
print("Witt cover at (1,0): dim", rep["dimension"], "(boundary term %d)" % rep["boundary_term"])
