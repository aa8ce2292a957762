from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsum_ode.algebra import Poly, Scalar
from expsum_ode.roots import (
    Root,
    exact_roots,
    find_roots,
    group_into_classes,
    nonneg_integer_roots,
    numeric_roots,
    snap_to_exact,
    squarefree_decomposition,
)

lam = Poly.x("lambda")
gauss_small = st.builds(
    Scalar,
    st.fractions(min_value=-4, max_value=4, max_denominator=6),
    st.fractions(min_value=-4, max_value=4, max_denominator=6),
)


def from_roots(*pairs):
    p = Poly([1], "lambda")
    for r, m in pairs:
        p = p * (lam - Scalar.coerce(r)) ** m
    return p


def test_rational_roots_roots():
    p = Poly([Fraction(16, 27), Fraction(-4, 3), 0, 1], "lambda")
    roots = find_roots(p)
    assert roots == (Root(Scalar(Fraction(-4, 3)), 1), Root(Scalar(Fraction(2, 3)), 2))


def test_gaussian_roots():
    roots = find_roots(Poly([1, 1, 1, 1], "lambda"))
    assert {(r.value, r.multiplicity) for r in roots} == {(Scalar(-1), 1), (Scalar(0, 1), 1), (Scalar(0, -1), 1)}
    assert all(r.exact for r in roots)


@given(st.lists(st.tuples(gauss_small, st.integers(1, 3)), min_size=1, max_size=3, unique_by=lambda t: t[0]))
def test_exact_roots_recovered(pairs):
    p = from_roots(*pairs)
    roots = find_roots(p)
    assert sorted((r.value.sort_key(), r.multiplicity) for r in roots) == sorted(
        (v.sort_key(), m) for v, m in pairs)


def test_irrational_roots_numeric():
    roots = find_roots(Poly([-2, 0, 1], "lambda"))
    assert [r.exact for r in roots] == [False, False]
    assert abs(roots[1].value.to_complex() - 2 ** 0.5) < 1e-14


def test_mixed_exact_and_irrational():
    p = (lam - Fraction(1, 3)) ** 2 * Poly([-2, 0, 1], "lambda")
    roots = find_roots(p)
    assert sum(r.multiplicity for r in roots) == 4
    assert Root(Scalar(Fraction(1, 3)), 2) in roots


def test_exact_roots_cofactor():
    found, rest = exact_roots((lam - 2) * Poly([-2, 0, 1], "lambda"))
    assert found == [Root(Scalar(2), 1)]
    assert rest.monic() == Poly([-2, 0, 1], "lambda")


def test_numeric_triple_root():
    p = from_roots((1, 3)).to_approx()
    (r,) = numeric_roots(p)
    assert r.multiplicity == 3
    assert abs(r.value.to_complex() - 1) < 1e-12


def test_snap_to_exact():
    p = Poly([Fraction(16, 27), Fraction(-4, 3), 0, 1], "lambda")
    assert snap_to_exact(0.6666666666666666, p) == Scalar(Fraction(2, 3))
    assert snap_to_exact(0.7, p) is None


def test_squarefree():
    p = from_roots((1, 3), (2, 1), (5, 2))
    parts = {m: f.monic() for f, m in squarefree_decomposition(p)}
    assert parts == {1: lam - 2, 2: lam - 5, 3: lam - 1}


@pytest.mark.parametrize(
    "poly, expected",
    [
        ((lam - 1) * (lam * 3 - 7), [1]),
        (Poly([1], "lambda"), []),
        ((lam + 2) * (lam - 4) * (lam - 0), [0, 4]),
        (Poly([-2, 0, 1], "lambda"), []),
    ],
)
def test_nonneg_integer_roots(poly, expected):
    assert nonneg_integer_roots(poly) == expected
    assert nonneg_integer_roots(poly.to_approx()) == expected


def test_classes_negative_frequency():
    classes = group_into_classes(find_roots(Poly([-1, 0, 1], "lambda")))
    (c,) = classes
    assert c.base == Scalar(-1) and c.offsets == (0, 2) and c.multiplicities == (1, 1)


def test_classes_gaussian_roots():
    classes = group_into_classes(find_roots(Poly([1, 1, 1, 1], "lambda")))
    assert [c.base for c in classes] == [Scalar(-1), Scalar(0, -1), Scalar(0, 1)]


def test_classes_complex_offsets():
    classes = group_into_classes([Root(Scalar(1, 1), 1), Root(Scalar(-2, 1), 2), Root(Scalar(0, 0), 1)])
    assert len(classes) == 2
    c = next(c for c in classes if c.base == Scalar(-2, 1))
    assert c.offsets == (0, 3) and c.multiplicities == (2, 1) and c.total == 3


def test_near_integer_difference_warns():
    a = Root(Scalar.approx(0.3), 1)
    b = Root(Scalar.approx(1.3 + 5e-8), 1)
    classes = group_into_classes([a, b], class_tol=1e-8)
    assert len(classes) == 2
    assert all(c.warnings for c in classes)
