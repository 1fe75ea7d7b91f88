"""
Derivations and bounded modules
===============================

The derivation algebra of C_q for d = 2, k = 2, and the module
V^alpha(V, W) built from the natural gl_2-module and the left-regular
gl_2-module.
"""

from qtorus import Derivation, ModuleDescriptor, der_apply, der_bracket, left_regular_module, young_module
from qtorus import QMatrix, QuantumTorus, reducibility_probe, trivial_module, verify_rep

T = QuantumTorus(QMatrix.normal_form(2, [2]))

# inner derivations ad(t^s) for s outside the radical, D(u, r) for r inside
x = Derivation.ad(T, (1, 0))
y = Derivation.ad(T, (0, 1))
e = Derivation.D(T, (1, 3), (2, 0))
print("[ad t^(1,0), ad t^(0,1)] =", der_bracket(x, y))
print("[D((1,3),(2,0)), ad t^(0,1)] =", der_bracket(e, y))

# the bracket is the commutator of the actions on C_q
a = T.monomial((1, 2)) + T.monomial((0, -1), 3)
lhs = der_apply(der_bracket(e, x), a)
rhs = der_apply(e, der_apply(x, a)) - der_apply(x, der_apply(e, a))
print("bracket acts as a commutator:", lhs == rhs)

# V natural with b = 1, W left-regular (4-dimensional, one dim per coset)
M = ModuleDescriptor(T, young_module((1,), 2, 1), left_regular_module(T), ("1/2", "1/3"))
print("weight space dims near 0:", [M.weight_dim((i, j)) for i in range(-1, 2) for j in range(-1, 2)])

rep = verify_rep(M, 1)
print("representation checks:", rep["checked"], "passed:", rep["passed"])

# the sign fault breaks the representation law
bad = ModuleDescriptor(T, young_module((1,), 2, 1), left_regular_module(T), ("1/2", "1/3"), fault="d-sign")
print("with a sign fault:", verify_rep(bad, 2)["counterexample"])

# in the Witt case the natural module with b = 1 has a proper submodule,
# while b = 5 does not (within radius 4)
W5 = QuantumTorus(QMatrix.ones(2))
for b in (1, 5):
    F = ModuleDescriptor(W5, young_module((1,), 2, b), trivial_module(W5), (0, 0))
    print("Witt natural b=%d:" % b, reducibility_probe(F, 4)["verdict"])
