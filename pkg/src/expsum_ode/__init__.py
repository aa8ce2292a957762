"""Finite-order exponential-sum solutions of linear ODEs with exponential-sum coefficients."""

__version__ = "0.1.0"

from .algebra import ExpSum, Poly, Scalar, parse_scalar
from .normalize import NormalizedProblem, RawProblem, denormalize_solution, to_npde
from .solver import SolutionBasis, pure_exponential, solve_all
from .verify import check_solution, independence, residual

__all__ = [
    "__version__",
    "ExpSum",
    "Poly",
    "Scalar",
    "parse_scalar",
    "NormalizedProblem",
    "RawProblem",
    "denormalize_solution",
    "to_npde",
    "SolutionBasis",
    "pure_exponential",
    "solve_all",
    "check_solution",
    "independence",
    "residual",
]
