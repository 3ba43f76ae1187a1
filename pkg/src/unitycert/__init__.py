"""Exact partition-of-unity identities and max-entropy positivity certificates.

Chebyshev/Pell identities on [-1,1] tied to the arcsine equilibrium measure,
Bernstein/Handelman identities on [0,1] tied to Lebesgue measure, and their
simplex extensions, together with dual Newton solvers whose optima recover
the corresponding moment vectors.
"""

from .identities import (
    IdentityReport,
    UnityVariant,
    constant_reduce,
    verify_pell,
    verify_simplex_equilibrium,
    verify_simplex_unity,
    verify_unity_01,
    verify_unity_interval,
)
from .maxent import (
    DualFunctional,
    HandelmanCertificate,
    NoInteriorCertificateError,
    PutinarCertificate,
    SolverReport,
    solve_handelman,
    solve_putinar,
    solve_simplex,
    verify_certificate,
    verify_certificate_exact,
)
from .measures import (
    ARCSINE,
    ARCSINE_G,
    LEBESGUE01,
    MeasureId,
    MomentFunctional,
    SimplexNormalization,
    bernstein_envelope,
    beta_integral,
    functional_for,
    quadrature_oracle,
    simplex_equilibrium,
    simplex_uniform,
)
from .momatrix import (
    ChristoffelForm,
    MomentMatrix,
    NotPositiveDefiniteError,
    christoffel_eval,
    christoffel_form,
    invert_exact,
    moment_matrix,
)
from .polycore import (
    ChebKind,
    MPoly,
    Rational,
    UPoly,
    bernstein,
    cheb,
    cheb_orthonormal_square,
    monomials_upto,
    poly_eval,
    simplex_generator_power,
)

__version__ = "0.1.0"

__all__ = [
    "ARCSINE",
    "ARCSINE_G",
    "ChebKind",
    "ChristoffelForm",
    "DualFunctional",
    "HandelmanCertificate",
    "IdentityReport",
    "LEBESGUE01",
    "MPoly",
    "MeasureId",
    "MomentFunctional",
    "MomentMatrix",
    "NoInteriorCertificateError",
    "NotPositiveDefiniteError",
    "PutinarCertificate",
    "Rational",
    "SimplexNormalization",
    "SolverReport",
    "UPoly",
    "UnityVariant",
    "bernstein",
    "bernstein_envelope",
    "beta_integral",
    "cheb",
    "cheb_orthonormal_square",
    "christoffel_eval",
    "christoffel_form",
    "constant_reduce",
    "functional_for",
    "invert_exact",
    "moment_matrix",
    "monomials_upto",
    "poly_eval",
    "quadrature_oracle",
    "simplex_equilibrium",
    "simplex_generator_power",
    "simplex_uniform",
    "solve_handelman",
    "solve_putinar",
    "solve_simplex",
    "verify_certificate",
    "verify_certificate_exact",
    "verify_pell",
    "verify_simplex_equilibrium",
    "verify_simplex_unity",
    "verify_unity_01",
    "verify_unity_interval",
]
