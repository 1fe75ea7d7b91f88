import warnings

import pytest

from qtorus.cover import (
    Differentiator,
    TensorVector,
    cover_identity_sweep,
    cover_weight_space,
    evaluate,
    j_membership,
    minimal_annihilating_l,
    pi_map,
    rewriting_identity_check,
    rewriting_identity_sweep,
)
from qtorus.derivations import window_generic_u
from qtorus.glrep import left_regular_module, trivial_module
from qtorus.modules import GradedVector, ModuleDescriptor, young_module
from qtorus.torus import QMatrix, QuantumTorus

C1 = QuantumTorus(QMatrix.normal_form(2, [2]))
C5 = QuantumTorus(QMatrix.ones(2))
ALPHA = ("1/2", "1/3")


def module(T, lam, b, alpha=ALPHA, **kw):
    W = trivial_module(T) if T.rad.N == 1 else left_regular_module(T)
    return ModuleDescriptor(T, young_module(lam, 2, b), W, alpha, **kw)


@pytest.mark.parametrize("T", [C1, C5])
def test_minimal_annihilating_l(T):
    # frozen: natural with b = 1 is killed already at l = 2, b = 5 needs l = 3
    assert minimal_annihilating_l(module(T, (), 0), 1, 4) == 2
    assert minimal_annihilating_l(module(T, (1,), 1), 1, 4) == 2
    assert minimal_annihilating_l(module(T, (1,), 5), 1, 4) == 3
    assert minimal_annihilating_l(module(T, (1,), 5, alpha=(0, 0)), 2, 4) == 3


def test_minimal_l_reports_counterexample():
    l, rep = minimal_annihilating_l(module(C5, (1,), 5), 1, 2, report=True)
    assert l is None and rep["annihilates"] is False and rep["l"] == 2


def test_differentiator_terms():
    om = Differentiator(C5, (3, 0), (1, 0), 2, (1, 2))
    assert om.terms() == [(1, (3, 0), (0, 0)), (-2, (2, 0), (1, 0)), (1, (1, 0), (2, 0))]
    with pytest.raises(ValueError):
        Differentiator(C1, (1, 0), (2, 0), 2, (1, 3))


def test_rewriting_identity_examples():
    desc = module(C5, (), 0, alpha=(0, 0))
    u = window_generic_u(C5, 4)
    # Witt case, l = 2, r = 2 xi_1, first block
    assert rewriting_identity_check(desc, (1, 1), (2, 0), 2, 0, 1, m=(1, 0), u=u, full=True)
    assert rewriting_identity_check(desc, (1, 1), (1, 0), 2, 0, 1, m=(1, 0), u=u, full=True)
    # the weight-zero vector is excluded
    assert rewriting_identity_check(desc, (1, 1), (1, 0), 2, 0, 1, m=(0, 0), u=u, full=True) is None
    # non-central r and central n (outside the Witt case) are inadmissible
    desc = module(C1, (1,), 1)
    assert rewriting_identity_check(desc, (1, 0), (1, 0), 2, 0, 1) is None
    assert rewriting_identity_check(desc, (2, 0), (2, 0), 2, 0, 1) is None


def test_rewriting_identity_is_not_vacuous():
    # the left side alone is not in J, so the right side carries real content
    desc = module(C5, (1,), 5)
    w = GradedVector({(0, 0): (1, 0)})
    lhs = TensorVector(C5, {(3, 1): w}, full=True)
    assert not j_membership(lhs, desc, 1)[0]
    assert j_membership(lhs - lhs, desc, 1)[0]


@pytest.mark.parametrize("T,lam,b", [(C1, (1,), 1), (C1, (), 0), (C5, (1,), 5), (C5, (), 0)])
def test_rewriting_identity_sweep(T, lam, b):
    res = rewriting_identity_sweep(module(T, lam, b), radius=1, full=T.rad.N == 1)
    assert res["passed"] and res["counts"]["failed"] == 0


def test_pi_and_evaluation():
    desc = module(C1, (1,), 1)
    w = GradedVector({(0, 1): (1, 0)})
    v = TensorVector(C1, {(1, 0): w})
    assert pi_map(v, desc) == evaluate(v, desc, (0, 0))
    assert not pi_map(v, desc).is_zero()


@pytest.mark.parametrize("T,lam,b", [(C1, (1,), 1), (C1, (), 0), (C5, (1,), 5)])
def test_cover_identity_sweep(T, lam, b):
    res = cover_identity_sweep(module(T, lam, b), 10, full=T.rad.N == 1)
    assert res["passed"], res["counterexample"]
    assert res["counts"]["j_nontrivial"] > 0


def test_cover_identity_sweep_catches_sign_fault():
    desc = module(C1, (1,), 1, fault="d-sign")
    res = cover_identity_sweep(desc, 50)
    assert not res["passed"]


def test_cover_weight_space_c5():
    desc = module(C5, (), 0, alpha=(0, 0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = cover_weight_space((1, 0), desc, 4, l=2, full=True)
    assert rep["stable"] and rep["within_bound"]
    assert rep["dimension"] == 1 and rep["boundary_term"] == 1


def test_cover_weight_space_c1():
    desc = module(C1, (1,), 1, alpha=(0, 0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = cover_weight_space((1, 0), desc, 3, l=2)
    assert rep["stable"] and rep["within_bound"]
    assert rep["dimension"] >= rep["pi_rank"] > 0
