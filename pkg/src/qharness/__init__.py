"""Exact polynomial-process machinery for quadratic harnesses.

Everything is computed over the rationals; no floating point anywhere.
"""

from .errors import (
    AlgebraError,
    DegenerateDenominator,
    DegenerateLeadingCoefficient,
    HypothesisViolation,
    InputError,
    InsufficientLength,
    InsufficientOrder,
    InvalidParameter,
    NonSquareConstant,
    NotDegreePreserving,
    ResonantTime,
    ZeroConstantTerm,
    ZeroPivot,
)
from .exact import (
    Poly,
    PowerSeries,
    as_fraction,
    format_rational,
    parse_rational,
    rational_sqrt,
    series_div,
    series_sqrt,
)
from .opalgebra import (
    PolySeq,
    check_derivative_commutator,
    compose,
    derivative_op,
    div_x,
    first_mismatch,
    first_nonzero,
    identity,
    invert,
    max_norm,
    mul_x,
    power,
    series_in_div_x,
)
from .harness import (
    CheckResult,
    HarnessParams,
    VerificationReport,
    commutation_residual,
    evolution_from_slope,
    expanded_commutation_residual,
    generator_from_commutator,
    harness_slope,
    martingale_polys,
    slope_quadratic_residual,
    solve_commutator,
    transition,
    verify,
)
from .free import (
    CauchyTransforms,
    FreeParams,
    GrowthBound,
    MomentSequence,
    cauchy_transforms,
    coefficient_growth_holds,
    commutator_closed_form,
    generator_closed_form,
    growth_bound,
    hankel_determinants,
    measure_moments,
    mgf_by_closed_form,
    mgf_by_recursion,
    mgf_equation_residual,
)
from .special import (
    ClosedFormPair,
    DerivativeSeries,
    exp_derivative,
    generator_from_derivative_series,
    poisson,
    quantum_bessel,
)
from .cli import JobSpec, main, run

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CauchyTransforms",
    "CheckResult",
    "ClosedFormPair",
    "DegenerateDenominator",
    "DegenerateLeadingCoefficient",
    "DerivativeSeries",
    "FreeParams",
    "GrowthBound",
    "HarnessParams",
    "HypothesisViolation",
    "InputError",
    "InsufficientLength",
    "InsufficientOrder",
    "InvalidParameter",
    "JobSpec",
    "MomentSequence",
    "NonSquareConstant",
    "NotDegreePreserving",
    "Poly",
    "PolySeq",
    "PowerSeries",
    "ResonantTime",
    "VerificationReport",
    "ZeroConstantTerm",
    "ZeroPivot",
    "as_fraction",
    "cauchy_transforms",
    "check_derivative_commutator",
    "coefficient_growth_holds",
    "commutation_residual",
    "commutator_closed_form",
    "compose",
    "derivative_op",
    "div_x",
    "evolution_from_slope",
    "exp_derivative",
    "expanded_commutation_residual",
    "first_mismatch",
    "first_nonzero",
    "format_rational",
    "generator_closed_form",
    "generator_from_commutator",
    "generator_from_derivative_series",
    "growth_bound",
    "hankel_determinants",
    "harness_slope",
    "identity",
    "invert",
    "main",
    "martingale_polys",
    "max_norm",
    "measure_moments",
    "mgf_by_closed_form",
    "mgf_by_recursion",
    "mgf_equation_residual",
    "mul_x",
    "parse_rational",
    "poisson",
    "power",
    "quantum_bessel",
    "rational_sqrt",
    "run",
    "series_div",
    "series_in_div_x",
    "series_sqrt",
    "slope_quadratic_residual",
    "solve_commutator",
    "transition",
    "verify",
]
