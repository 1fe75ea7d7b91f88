"""Exact computations with rational quantum tori, their derivation algebras and weight modules."""

from .cyclotomic import CycScalar, as_scalar, cyc_make, zeta
from .lattice import RadicalData, normalize_q, radical_basis, smith_normal_form
from .torus import QMatrix, QuantumTorus, TorusElement
from .glrep import GradedGlModule, left_regular_module, trivial_module, x_power
from .derivations import Derivation, der_apply, der_bracket
from .modules import ModuleDescriptor, reducibility_probe, verify_rep, young_module
from .cover import cover_weight_space, rewriting_identity_check, minimal_annihilating_l

__version__ = "0.1.0"

__all__ = [
    "CycScalar",
    "as_scalar",
    "cyc_make",
    "zeta",
    "RadicalData",
    "normalize_q",
    "radical_basis",
    "smith_normal_form",
    "QMatrix",
    "QuantumTorus",
    "TorusElement",
    "GradedGlModule",
    "left_regular_module",
    "trivial_module",
    "x_power",
    "Derivation",
    "der_apply",
    "der_bracket",
    "ModuleDescriptor",
    "reducibility_probe",
    "verify_rep",
    "young_module",
    "cover_weight_space",
    "rewriting_identity_check",
    "minimal_annihilating_l",
]
