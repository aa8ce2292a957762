"""Cross-checks against sympy as an independent computer algebra oracle.

The frozen values in the other test files (negative-frequency solution, the z²e^z
residual, the gcd for the Gaussian example, Stirling tables) were first
computed here.
"""

from fractions import Fraction

import pytest

from expsum_ode.algebra import ExpSum
from expsum_ode.normalize import RawProblem, to_npde
from expsum_ode.solver import solve_all
from expsum_ode.transform import stirling_matrix

from helpers import es, load_problem, load_solutions, random_instances, raw_from_polys

sp = pytest.importorskip("sympy")
z, lam_s = sp.symbols("z lambda")


def to_sympy_scalar(s):
    return sp.Rational(s.re.numerator, s.re.denominator) + sp.I * sp.Rational(s.im.numerator, s.im.denominator)


def to_sympy(f: ExpSum):
    expr = sp.Integer(0)
    for freq, p in f:
        poly = sum((to_sympy_scalar(c) * z ** k for k, c in enumerate(p.coeffs)), sp.Integer(0))
        expr += poly * sp.exp(to_sympy_scalar(freq) * z)
    return expr


def sympy_residual(f: ExpSum, raw: RawProblem):
    g = to_sympy(f)
    expr = sum(to_sympy(a) * sp.diff(g, z, i) for i, a in enumerate(raw.all_coefficients()))
    return sp.simplify(sp.expand(expr))


@pytest.mark.parametrize("name", ["rational_roots", "rational_roots_half", "gaussian_roots", "triple_root", "negative_frequency"])
def test_basis_satisfies_equation(name):
    raw = load_problem(name)
    for f in solve_all(to_npde(raw)).original:
        assert sympy_residual(f, raw) == 0


def test_negative_frequency_solution_value():
    raw = load_problem("negative_frequency")
    # C1 = 1: the only exponential sum a + b e^z solving the equation, up to scale
    a, b = sp.symbols("a b")
    g = a + b * sp.exp(z)
    expr = sp.expand(sp.diff(g, z, 2) + sp.exp(-z) * sp.diff(g, z) - g)
    sol = sp.solve([expr.coeff(sp.exp(z)), expr.subs(sp.exp(z), 0)], [a], dict=True)
    assert sol == [{a: b}]
    assert sympy_residual(es((0, 1), (1, 1)), raw) == 0


def test_z2ez_residual_value():
    raw = load_problem("triple_root")
    (f,) = load_solutions("triple_root_z2ez")
    assert sp.simplify(sympy_residual(f, raw) + 2 * sp.exp(2 * z)) == 0


def test_gaussian_example_gcd():
    # λ^3 + (1+t)λ^2 + (1+(1+i)t)λ + (1+it), split by powers of t
    t = sp.symbols("t")
    full = lam_s ** 3 + (1 + t) * lam_s ** 2 + (1 + (1 + sp.I) * t) * lam_s + (1 + sp.I * t)
    c0 = sp.Poly(full.subs(t, 0), lam_s, extension=sp.I)
    c1 = sp.Poly(sp.expand(full).coeff(t, 1), lam_s, extension=sp.I)
    g = sp.gcd(c0, c1)
    assert sp.expand(g.as_expr() - (lam_s + 1) * (lam_s + sp.I)) == 0


def test_stirling_against_sympy():
    from sympy.functions.combinatorial.numbers import stirling
    m = stirling_matrix(12)
    assert all(m[i][j] == stirling(j, i) for i in range(13) for j in range(13))


@pytest.mark.parametrize("P", random_instances()[1::2], ids=lambda P: f"n{len(P)}")
def test_planted_solutions_against_sympy(P):
    raw = raw_from_polys(P)
    basis = solve_all(to_npde(raw)).original
    assert basis
    for f in basis:
        assert sympy_residual(f, raw) == 0


def test_degree_three_polynomial_solution():
    raw = RawProblem(2, (es((1, -3)), es((0, 1), (1, 1))))
    f = es((0, 1), (1, Fraction(3, 2)), (2, Fraction(1, 2)), (3, Fraction(1, 24)))
    assert sympy_residual(f, raw) == 0
