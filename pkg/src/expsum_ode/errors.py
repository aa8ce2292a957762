"""Exception types shared across the package.

Each CLI-visible failure maps to one class so that ``cli`` can translate
it into an exit code without string matching.
"""


class ExpSumODEError(Exception):
    """Base class for every error raised by this package."""


class ModeError(ExpSumODEError, TypeError):
    """Exact and approximate scalars were combined."""


class RoleError(ExpSumODEError, TypeError):
    """Polynomials in different variables were combined."""


class MergeAmbiguityError(ExpSumODEError, ValueError):
    """Approximate frequencies could not be merged consistently."""


class ParseError(ExpSumODEError, ValueError):
    """Malformed scalar text or problem/solution document."""


class NormalizationError(ExpSumODEError, ValueError):
    """Input violates the rational-frequency, constant-coefficient hypothesis."""


class NoNonzeroFrequency(ExpSumODEError):
    """Every frequency is zero: the equation has constant coefficients."""


class UnsupportedProblem(ExpSumODEError):
    """The operation is not available for this problem (e.g. gamma > 0)."""


class NumericFailure(ExpSumODEError, ArithmeticError):
    """Floating point root finding or linear algebra did not converge."""


class CapExceeded(ExpSumODEError):
    """A polynomial degree candidate exceeds the configured cap."""

    def __init__(self, candidate: int, cap: int):
        super().__init__(f"degree candidate {candidate} exceeds cap {cap}")
        self.candidate = candidate
        self.cap = cap


class InternalInconsistency(ExpSumODEError, AssertionError):
    """A constructed solution failed verification."""
