"""Approximate GCD of several real univariate polynomials by modified Newton iteration."""

from .errors import (
    DegenerateCofactorError,
    GpgcdError,
    InvalidProblemError,
    RankDeficientError,
    SingularSystemError,
)
from .extract import (
    ApproxGcdResult,
    approx_gcd,
    least_squares_division,
    normalize_cofactors,
    select_and_correct,
)
from .poly import Polynomial, conv_matrix, mul, norm2_sq, sub
from .solver import (
    ProblemInstance,
    SolverOptions,
    SolverOutcome,
    VariableVector,
    constraint_count,
    initial_point,
    solve,
)
from .sylvester import gcd_degree_estimate, subres_dims, subresultant_matrix

__version__ = "0.1.0"

__all__ = [
    "ApproxGcdResult",
    "DegenerateCofactorError",
    "GpgcdError",
    "InvalidProblemError",
    "Polynomial",
    "ProblemInstance",
    "RankDeficientError",
    "SingularSystemError",
    "SolverOptions",
    "SolverOutcome",
    "VariableVector",
    "approx_gcd",
    "constraint_count",
    "conv_matrix",
    "gcd_degree_estimate",
    "initial_point",
    "least_squares_division",
    "mul",
    "norm2_sq",
    "normalize_cofactors",
    "select_and_correct",
    "solve",
    "sub",
    "subres_dims",
    "subresultant_matrix",
]
