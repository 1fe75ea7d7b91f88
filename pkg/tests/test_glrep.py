from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qtorus.cyclotomic import zeta
from qtorus.glrep import (
    GradedGlModule,
    block_generators,
    left_regular_module,
    loop_embed,
    loop_mul,
    trivial_module,
    x_power,
)
from qtorus.linalg import CycMatrix
from qtorus.sweeps import loop_hom_sweep, monomial_form
from qtorus.torus import QMatrix, QuantumTorus, TorusElement

C1 = QuantumTorus(QMatrix.normal_form(2, [2]))
C2 = QuantumTorus(QMatrix.normal_form(2, [4]))
C4 = QuantumTorus(QMatrix.normal_form(4, [4, 2]))


def test_block_generators():
    xo, xe = block_generators(2, -1)
    assert xo == CycMatrix([[1, 0], [0, -1]])
    assert xe == CycMatrix([[0, 1], [1, 0]])
    assert xe @ xo == CycMatrix([[0, -1], [1, 0]])
    assert xe @ xo == (xo @ xe).scale(-1)
    xo, xe = block_generators(1, 1)
    assert xo == xe == CycMatrix.identity(1)
    with pytest.raises(ValueError):
        block_generators(4, -1)


def test_block_relation():
    # X_even X_odd = q X_odd X_even for every order
    for k in (2, 3, 4, 6):
        q = zeta(k)
        xo, xe = block_generators(k, q)
        assert xe @ xo == (xo @ xe).scale(q)
        assert xo ** k == CycMatrix.identity(k) == xe ** k


def test_x_power_examples():
    E = CycMatrix.identity(2)
    assert x_power((0, 0), C1) == E
    assert x_power((2, 0), C1) == E
    assert x_power((0, 1), C1) @ x_power((1, 0), C1) == x_power((1, 1), C1).scale(-1)
    for xi in C4.rad.xis:
        assert x_power(xi, C4) == CycMatrix.identity(8)


def test_loop_hom_sweeps():
    for T in (C1, C2):
        count, bad = loop_hom_sweep(T, 2 * T.L)
        assert bad is None and count == (4 * T.L + 1) ** 4
    count, bad = loop_hom_sweep(C4, 0, box_only=True)
    assert bad is None and count == 64 * 64


def test_monomial_form():
    perm, exps = monomial_form(x_power((1, 1), C2), 4)
    assert sorted(perm) == [0, 1, 2, 3]
    assert monomial_form(CycMatrix([[1, 1], [0, 1]]), 2) is None


def test_loop_embed_examples():
    (m, n), = loop_embed(C2.one())
    assert m == CycMatrix.identity(4) and n == (0, 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3)), max_size=3),
       st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3)), max_size=3))
def test_loop_embedding_is_multiplicative(ta, tb):
    a = TorusElement(C2, {(x, y): c for x, y, c in ta})
    b = TorusElement(C2, {(x, y): c for x, y, c in tb})
    assert loop_mul(loop_embed(a), loop_embed(b)) == loop_embed(a * b)


def test_left_regular_module():
    W = left_regular_module(C1)
    assert W.dim == 4
    assert all(W.component_dim(n) == 1 for n in C1.rad.delta)
    assert W.is_graded_irreducible()
    # it is a representation of the twisted group algebra
    for n, m in product(C1.rad.delta, repeat=2):
        nm = tuple(a + b for a, b in zip(n, m))
        assert W.act(n) @ W.act(m) == W.act(nm).scale(C1.sigma(n, m))
    W4 = left_regular_module(C4)
    assert W4.dim == 64 and W4.is_graded_irreducible()


def test_trivial_module():
    W = trivial_module(QuantumTorus(QMatrix.ones(2)))
    assert W.dim == 1 and W.act((3, -1)) == CycMatrix.identity(1)
    W = trivial_module(C1)
    assert W.act((1, 0)).is_zero()


def test_json_roundtrip_and_validation():
    W = left_regular_module(C1)
    again = GradedGlModule.from_json(C1, W.to_json())
    assert again.action == W.action and again.grading == W.grading
    bad = {"N": 2, "dim": 1, "grading": [0], "action": {"0,0": [["0"]]}}
    with pytest.raises(ValueError, match="identity"):
        GradedGlModule.from_json(C1, bad)
    wrong_grading = W.to_json()
    wrong_grading["grading"] = [0, 0, 0, 0]
    with pytest.raises(ValueError):
        GradedGlModule.from_json(C1, wrong_grading)
    with pytest.raises(ValueError):
        GradedGlModule.from_json(C2, W.to_json())
