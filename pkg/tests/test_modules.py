from fractions import Fraction
from itertools import product

import pytest

from qtorus.derivations import Derivation
from qtorus.glrep import left_regular_module, trivial_module
from qtorus.linalg import CycMatrix
from qtorus.modules import (
    GradedVector,
    ModuleDescriptor,
    reducibility_probe,
    verify_rep,
    vw_act,
    weyl_dimension,
    young_module,
)
from qtorus.torus import QMatrix, QuantumTorus

C1 = QuantumTorus(QMatrix.normal_form(2, [2]))
C5 = QuantumTorus(QMatrix.ones(2))


def natural(d, b=1):
    return young_module((1,), d, b)


@pytest.mark.parametrize("lam,d", [((1,), 2), ((2,), 2), ((1, 1), 3), ((2, 1), 3), ((2,), 3), ((3, 1), 2)])
def test_young_dimensions_match_weyl(lam, d):
    V = young_module(lam, d)
    assert V.dim == weyl_dimension(lam, d)
    V.validate()


def test_young_module_identity_and_errors():
    V = young_module((1, 1), 3, b=5)
    ident = sum((V.E(i, i) for i in range(1, 3)), V.E(0, 0))
    assert ident == CycMatrix.identity(3).scale(5)
    assert young_module((), 2, 0).dim == 1
    with pytest.raises(ValueError):
        young_module((1, 2), 3)
    with pytest.raises(ValueError):
        young_module((1, 1, 1), 2)


def test_weyl_dimension_values():
    assert weyl_dimension((1,), 4) == 4
    assert weyl_dimension((1, 1), 4) == 6
    assert weyl_dimension((2, 1), 3) == 8


def test_degree_zero_action():
    desc = ModuleDescriptor(C1, natural(2), left_regular_module(C1), (0, 0))
    v = GradedVector({(0, 0): (1, 1)})
    assert vw_act(Derivation.D(C1, (3, 7), (0, 0)), v, desc).is_zero()
    # the Cartan part acts by (u | n + alpha) on every component
    desc = ModuleDescriptor(C1, natural(2), left_regular_module(C1), ("1/2", "1/3"))
    v = GradedVector({(1, -1): (1, 0)})
    out = vw_act(Derivation.D(C1, (6, 6), (0, 0)), v, desc)
    assert out == v.scale(Fraction(5))


@pytest.mark.parametrize("lam,b", [((), 0), ((1,), 1), ((1, 1), 2)])
@pytest.mark.parametrize("alpha", [(0, 0), ("1/2", "1/3")])
def test_verify_rep_small(lam, b, alpha):
    for T, W in ((C1, left_regular_module(C1)), (C5, trivial_module(C5))):
        desc = ModuleDescriptor(T, young_module(lam, 2, b), W, alpha)
        rep = verify_rep(desc, 1)
        assert rep["passed"] and rep["checked"] > 0


def test_verify_rep_catches_sign_fault():
    desc = ModuleDescriptor(C1, natural(2), left_regular_module(C1), ("1/2", "1/3"), fault="d-sign")
    rep = verify_rep(desc, 2)
    assert not rep["passed"]
    assert rep["counterexample"] is not None


def test_descriptor_validation():
    with pytest.raises(ValueError):
        ModuleDescriptor(C1, natural(3), left_regular_module(C1), (0, 0))
    desc = ModuleDescriptor.from_config(C1, {"V": {"lambda": [1], "b": 1}, "alpha": ["1/2", 0]})
    assert desc.weight_dim((3, 1)) == 2


def test_probes_on_witt_case():
    W = trivial_module(C5)
    desc = ModuleDescriptor(C5, natural(2, 1), W, (0, 0))
    assert reducibility_probe(desc, 4)["verdict"] == "window-reducible"
    desc = ModuleDescriptor(C5, young_module((), 2, 0), W, (0, 0))
    assert reducibility_probe(desc, 4)["verdict"] == "window-reducible"
    for alpha in ((0, 0), ("1/2", "1/3")):
        desc = ModuleDescriptor(C5, natural(2, 5), W, alpha)
        for seed in range(3):
            rep = reducibility_probe(desc, 4, seed=seed)
            assert rep["verdict"] == "window-irreducible" and rep["seeds_tried"] >= 3


def test_weight_spaces_over_window():
    desc = ModuleDescriptor(C1, young_module((1, 1), 2, 2), left_regular_module(C1), (0, 0))
    assert {desc.weight_dim(n) for n in product(range(-2, 3), repeat=2)} == {1}
