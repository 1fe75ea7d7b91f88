"""
A rational quantum torus
========================

Build C_q for d = 2 with q_21 = zeta_4, look at its radical, and check
that the loop realization X^n reproduces the twisted product.
"""

from qtorus import QMatrix, QuantumTorus, x_power, zeta
from qtorus.lattice import normalize_q

# q in normal form: one block with a primitive 4th root of unity
q = QMatrix.normal_form(2, [4])
T = QuantumTorus(q)
print("q =", q)

# the radical of the commutator form is 4Z x 4Z, so Gamma has 16 elements
rad = T.rad
print("xi basis:", rad.xis, " N =", rad.N, " |Gamma| =", len(rad.delta))

# t^(0,1) t^(1,0) = zeta_4 t^(1,1), while t^(1,0) t^(0,1) = t^(1,1)
a, b = T.monomial((0, 1)), T.monomial((1, 0))
print("t^(0,1) t^(1,0) =", a * b)
print("t^(1,0) t^(0,1) =", b * a)
print("commutator      =", a.commutator(b))

# central degrees commute with everything
z = T.monomial((4, -8))
print("t^(4,-8) central:", T.is_central(z))

# in gl_4 the clock and shift matrices realize the same twist
X = lambda n: x_power(n, T)
lhs = X((0, 1)) @ X((1, 0))
rhs = X((1, 1)).scale(T.sigma((0, 1), (1, 0)))
print("X^(0,1) X^(1,0) == sigma X^(1,1):", lhs == rhs)
print("X^(4,0) is the identity:", X((4, 0)) == X((0, 0)))

# a q that is not in normal form gets conjugated into one
q3 = QMatrix.from_exponents([[0, 1, 0], [1, 0, 1], [0, 1, 0]], 2)
q_std, P = normalize_q(q3)
print("normalized:", q_std, " change of basis:", P)
print("zeta_4 has order", zeta(4).order)
