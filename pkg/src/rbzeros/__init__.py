"""Exact R-Bonacci polynomials, the symmetric functions of their zeros, and the zeros themselves."""

from .exactpoly import (
    DecimatedForm,
    IntPolynomial,
    MixedResidueError,
    add,
    decimate,
    evaluate,
    formal_derivative,
    mul,
    square_free_part,
)
from .rbonacci import (
    InvalidParams,
    RBonacciParams,
    build_closed_form,
    build_derivative_closed_form,
    build_recurrence,
    lucas_identity_check,
    rbonacci,
    rnomial,
)
from .report import VerificationReport
from .roots import (
    ComplexRootSet,
    NonConvergence,
    OrbitIncomplete,
    find_roots,
    quadratic_orbit_roots,
    reference_roots,
    star_probe,
)
from .vieta import (
    DerivativeSpec,
    InvalidSpec,
    derivative_spec,
    elementary_symmetric_from_poly,
    expected_sigma_theorem4,
    expected_sigma_theorem12,
    upsilon_psi,
    verify,
)

__all__ = [
    "VerificationReport",
    "DecimatedForm",
    "IntPolynomial",
    "MixedResidueError",
    "add",
    "decimate",
    "evaluate",
    "formal_derivative",
    "mul",
    "square_free_part",
    "InvalidParams",
    "RBonacciParams",
    "build_closed_form",
    "build_derivative_closed_form",
    "build_recurrence",
    "lucas_identity_check",
    "rbonacci",
    "rnomial",
    "ComplexRootSet",
    "NonConvergence",
    "OrbitIncomplete",
    "find_roots",
    "quadratic_orbit_roots",
    "reference_roots",
    "star_probe",
    "DerivativeSpec",
    "InvalidSpec",
    "derivative_spec",
    "elementary_symmetric_from_poly",
    "expected_sigma_theorem4",
    "expected_sigma_theorem12",
    "upsilon_psi",
    "verify",
]

__version__ = "0.1.0"
