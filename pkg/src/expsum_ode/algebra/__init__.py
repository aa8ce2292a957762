"""Scalars, polynomials and exponential sums."""

from .expsum import DEFAULT_MERGE_TOL, ExpSum, expsum_add, expsum_differentiate, expsum_mul, expsum_normalize
from .poly import (
    NEG_INF_DEGREE,
    Poly,
    falling_factorial,
    falling_factorial_poly,
    from_ints,
    poly_arith,
    poly_compose,
    poly_diff,
    poly_eval,
    poly_gcd,
)
from .scalar import I, ONE, ZERO, Scalar, format_scalar, looks_decimal, parse_scalar

__all__ = [
    "DEFAULT_MERGE_TOL",
    "ExpSum",
    "expsum_normalize",
    "expsum_add",
    "expsum_mul",
    "expsum_differentiate",
    "NEG_INF_DEGREE",
    "Poly",
    "falling_factorial",
    "falling_factorial_poly",
    "from_ints",
    "poly_gcd",
    "poly_arith",
    "poly_compose",
    "poly_diff",
    "poly_eval",
    "I",
    "ONE",
    "ZERO",
    "Scalar",
    "format_scalar",
    "looks_decimal",
    "parse_scalar",
]
