from fractions import Fraction

import pytest

from expsum_ode.algebra import Poly, Scalar
from expsum_ode.errors import CapExceeded, UnsupportedProblem
from expsum_ode.normalize import NormalizedProblem, RawProblem, to_npde
from expsum_ode.roots import RootClass, find_roots, group_into_classes
from expsum_ode.solver import (
    LogSolution,
    assemble,
    class_ansatz_solve,
    degree_candidates,
    forward_series,
    poly_solutions,
    pure_exponential,
    recurrence_polys,
    solve_all,
)
from expsum_ode.transform import indicial_polynomial, shift_by_lambda, to_t_domain
from expsum_ode.verify import check_solution, independence

from helpers import es, load_problem, random_instances, raw_from_polys

THIRD = Fraction(1, 3)


def u_equation(name, lam):
    return shift_by_lambda(to_t_domain(to_npde(load_problem(name))), lam)


def cap_problem(s):
    # f'' + (1 + e^z) f' + s e^z f = 0; at λ = 0 the degree candidate is -s
    return RawProblem(2, (es((1, s)), es((0, 1), (1, 1))))


def test_recurrence_rational_roots():
    rec = recurrence_polys(u_equation("rational_roots", -4 * THIRD))
    lam = Poly.x("lambda")
    assert rec.R[1] == (lam - 1) * (lam * 3 - 7)
    q = indicial_polynomial(to_npde(load_problem("rational_roots")))
    assert rec.R[0] == q.shift(-4 * THIRD)


def test_forward_series_and_resonance():
    rec = recurrence_polys(u_equation("rational_roots", -4 * THIRD))
    assert forward_series(rec, 2) == [Scalar(1), Scalar(-7)]
    # -4/3 + 2 = 2/3 is a root: the recurrence stalls at k = 2
    with pytest.raises(ValueError, match="resonance"):
        forward_series(rec, 3)


def test_degree_candidates_and_poly_solution_rational_roots():
    ode = u_equation("rational_roots", -4 * THIRD)
    assert degree_candidates(ode) == [1]
    assert poly_solutions(ode) == [Poly([1, -7], "t")]
    assert degree_candidates(u_equation("rational_roots", 2 * THIRD)) == []


@pytest.mark.parametrize("lam", [-1, 0])
def test_no_solution_no_candidates(lam):
    ode = u_equation("no_solution", lam)
    assert degree_candidates(ode) == []
    assert poly_solutions(ode) == []


def test_cap_exceeded():
    ode = shift_by_lambda(to_t_domain(to_npde(cap_problem(-600))), 0)
    assert 600 in degree_candidates(ode)
    with pytest.raises(CapExceeded) as info:
        poly_solutions(ode, cap=500)
    assert info.value.cap == 500
    with pytest.raises(CapExceeded):
        solve_all(to_npde(cap_problem(-600)))


def test_poly_solution_of_degree_three():
    b = solve_all(to_npde(cap_problem(-3)))
    assert b.dimension == 1
    assert b.original[0] == es((0, 1), (1, Fraction(3, 2)), (2, Fraction(1, 2)), (3, Fraction(1, 24)))


def test_pure_exponential():
    assert pure_exponential(to_npde(load_problem("triple_root"))) == [Scalar(1)]
    assert set(pure_exponential(to_npde(load_problem("gaussian_roots")))) == {Scalar(-1), Scalar(0, -1)}
    assert pure_exponential(to_npde(load_problem("rational_roots"))) == []


def test_pure_exponential_numeric():
    vals = pure_exponential(to_npde(load_problem("gaussian_roots")).to_approx())
    assert sorted((round(v.to_complex().real, 9), round(v.to_complex().imag, 9)) for v in vals) == [(-1, 0), (0, -1)]


def test_class_ansatz_negative_frequency():
    np_ = to_npde(load_problem("negative_frequency"))
    (cls,) = group_into_classes(find_roots(indicial_polynomial(np_)))
    (sol,) = class_ansatz_solve(np_, cls)
    assert sol.lam == Scalar(-1)
    # e^{-w}(1 + e^w) in the flipped variable
    assert sol.components == (Poly([1, 1], "t"),)
    assert check_solution(assemble(sol), np_)[1]


def test_class_ansatz_log_case():
    np_ = to_npde(load_problem("triple_root"))
    (cls,) = group_into_classes(find_roots(indicial_polynomial(np_)))
    sols = class_ansatz_solve(np_, cls)
    assert [s.top_power for s in sols] == [0, 1]
    assert [assemble(s) for s in sols] == [es((1, 1)), es((1, [0, 1]))]


def test_class_ansatz_without_candidates():
    np_ = to_npde(load_problem("no_solution"))
    cls = RootClass(Scalar(-1), (0, 1), (1, 1))
    assert class_ansatz_solve(np_, cls) == []


def test_log_solution_trims_and_assembles():
    s = LogSolution(Scalar(2), (Poly([1, 3], "t"), Poly([], "t")))
    assert s.top_power == 0
    assert assemble(s) == es((2, 1), (3, 3))
    with pytest.raises(ValueError):
        LogSolution(Scalar(0), (Poly([], "t"),))


def test_solve_all_gamma_positive():
    np_ = NormalizedProblem.from_polys([Poly([-1], "t")], gamma=1)
    with pytest.raises(UnsupportedProblem):
        solve_all(np_)


def test_solve_all_reports_gaussian_roots():
    b = solve_all(to_npde(load_problem("gaussian_roots")))
    assert b.dimension == 2 and b.rank == 2 and b.count_bound == 2
    by_root = {r.root.value: r for r in b.root_reports}
    assert by_root[Scalar(0, 1)].degree_candidates == ()
    assert by_root[Scalar(-1)].poly_solution_count == 1


def test_solve_all_constant_coefficients():
    b = solve_all(to_npde(RawProblem(2, (es((0, 1)), es((0, 2))))))
    # f'' + 2f' + f = 0 has e^{-z}, z e^{-z}
    assert list(b.original) == [es((-1, 1)), es((-1, [0, 1]))]


def test_solve_all_numeric_matches_exact():
    for name in ["rational_roots", "gaussian_roots", "triple_root", "negative_frequency"]:
        np_ = to_npde(load_problem(name))
        exact = solve_all(np_)
        approx = solve_all(np_.to_approx())
        assert approx.dimension == exact.dimension
        joint = list(exact.original) + list(approx.original)
        assert independence(joint, 1e-8).rank == exact.dimension


@pytest.mark.parametrize("P", random_instances(), ids=lambda P: f"n{len(P)}")
def test_random_instances_sound(P):
    raw = raw_from_polys(P)
    b = solve_all(to_npde(raw))
    assert b.dimension <= raw.order
    for f in b.original:
        r, cert = check_solution(f, raw)
        assert r.is_zero()
