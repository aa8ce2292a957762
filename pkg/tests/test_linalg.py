from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from expsum_ode.algebra import Scalar
from expsum_ode.linalg import GaussInt, nullspace, rank

entry = st.builds(Scalar, st.integers(-3, 3), st.integers(-1, 1))
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.tuples(st.just(c), st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r))
    )
)


def sparse(rows):
    return [{j: v for j, v in enumerate(row) if not v.is_zero()} for row in rows]


def apply(rows, vec):
    return [sum((row.get(j, Scalar(0)) * vec[j] for j in range(len(vec))), Scalar(0)) for row in rows]


def test_gaussint_division():
    a = GaussInt(3, 4) * GaussInt(1, -2)
    assert a // GaussInt(1, -2) == GaussInt(3, 4)


@given(matrices)
def test_exact_nullspace_is_kernel(m):
    ncols, dense = m
    rows = sparse(dense)
    basis = nullspace(rows, ncols, exact=True)
    for v in basis:
        assert all(x.is_zero() for x in apply(rows, v))
    assert len(basis) + rank(rows, ncols, exact=True).rank == ncols


@given(matrices)
def test_exact_rank_matches_numpy(m):
    ncols, dense = m
    a = np.array([[x.to_complex() for x in row] for row in dense])
    assert rank(sparse(dense), ncols, exact=True).rank == np.linalg.matrix_rank(a)


def test_rational_nullspace():
    rows = [{0: Scalar(Fraction(1, 2)), 1: Scalar(Fraction(-1, 3))}]
    (v,) = nullspace(rows, 2, exact=True)
    assert apply(rows, v)[0].is_zero()


def test_approx_nullspace_triangular():
    # kernel of [1 1 0] spanned by e3 and (1, -1, 0); support-prefix vector first
    rows = [{0: Scalar.approx(1.0), 1: Scalar.approx(1.0)}]
    basis = nullspace(rows, 3, exact=False)
    assert len(basis) == 2
    first = [x.to_complex() for x in basis[0]]
    assert abs(first[2]) < 1e-12
    for v in basis:
        assert abs(v[0].to_complex() + v[1].to_complex()) < 1e-12


def test_approx_rank():
    rows = [{0: Scalar.approx(1.0), 1: Scalar.approx(2.0)}, {0: Scalar.approx(2.0), 1: Scalar.approx(4.0)}]
    cert = rank(rows, 2, exact=False)
    assert cert.rank == 1 and len(cert.pivot_columns) == 1
