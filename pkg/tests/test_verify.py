from fractions import Fraction

import pytest

from expsum_ode.algebra import ExpSum, Poly, Scalar
from expsum_ode.errors import ModeError
from expsum_ode.normalize import to_npde
from expsum_ode.verify import check_solution, independence, is_zero, numeric_spotcheck, residual

from helpers import es, load_problem, load_solutions


def test_rational_roots_candidate_verifies():
    raw = load_problem("rational_roots")
    (f,) = load_solutions("rational_roots_solution")
    r, cert = check_solution(f, raw)
    assert r.is_zero() and cert


def test_z2ez_residual():
    raw = load_problem("triple_root")
    (f,) = load_solutions("triple_root_z2ez")
    r, cert = check_solution(f, raw)
    assert r == es((2, -2))
    assert not cert
    assert cert.worst_frequency == Scalar(2) and cert.worst_power == 0 and cert.worst_coefficient == Scalar(-2)


def test_residual_against_normalized_problem():
    np_ = to_npde(load_problem("triple_root"))
    assert residual(es((1, [0, 1])), np_).is_zero()


def test_mode_mismatch():
    raw = load_problem("rational_roots")
    with pytest.raises(ModeError):
        residual(es((0, 1)).to_approx(), raw)


def test_approx_zero_test_is_relative():
    raw = load_problem("rational_roots").to_approx()
    (f,) = load_solutions("rational_roots_solution")
    r, cert = check_solution(f.to_approx() * Scalar.approx(1e6), raw)
    assert cert and cert.threshold > 1e-9


def test_is_zero_exact_and_approx():
    assert is_zero(ExpSum.zero())
    small = ExpSum.exp(Scalar.approx(1.0), Scalar.approx(1e-12), exact=False)
    assert is_zero(small, 1e-9)
    assert not is_zero(small, 1e-13)


def test_independence():
    assert independence([es((1, 1)), es((1, [0, 1]))]).rank == 2
    assert independence([es((1, 1), (2, 3)), es((1, 2), (2, 6))]).rank == 1
    assert independence([]).rank == 0


def test_independence_approx_clusters_frequencies():
    a = ExpSum.exp(Scalar.approx(-1.0), Scalar.approx(1.0), exact=False)
    b = ExpSum.exp(Scalar.approx(-1.0 + 1e-13), Scalar.approx(2.0), exact=False)
    assert independence([a, b]).rank == 1


def test_numeric_spotcheck():
    raw = load_problem("rational_roots")
    (f,) = load_solutions("rational_roots_solution")
    sc = numeric_spotcheck(f, raw, [0.1, 1 + 1j, -2j])
    assert sc.max_rel < 1e-12 and not sc.overflow
    bad = numeric_spotcheck(es((2, 1)), raw, [0.5])
    assert bad.max_rel > 1e-3


def test_numeric_spotcheck_overflow():
    raw = load_problem("rational_roots")
    sc = numeric_spotcheck(es((1, 1)), raw, [800.0])
    assert sc.overflow == (800 + 0j,)


def test_check_solution_half_variant():
    raw = load_problem("rational_roots_half")
    f = es((Fraction(-2, 3), 1), (Fraction(-1, 6), -7))
    assert check_solution(f, raw)[0].is_zero()
