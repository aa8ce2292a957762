"""Nullspace and rank of sparse matrices over Q(i) or complex doubles.

Exact mode clears denominators row by row and runs fraction-free
(Bareiss) elimination over Z or Z[i]; only the final back substitution
uses rationals.  Approximate mode uses an SVD with a relative singular
value threshold.

Matrices are passed as a list of sparse rows ``{column: Scalar}`` plus
the column count.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .algebra import Scalar
from .errors import ModeError, NumericFailure

__all__ = ["GaussInt", "nullspace", "rank", "EchelonCertificate", "SVD_REL_TOL"]

SVD_REL_TOL = 1e-10

Row = Mapping[int, Scalar]


class GaussInt:
    """Gaussian integer a + b·i with exact division."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = a
        self.b = b

    def __mul__(self, o: "GaussInt") -> "GaussInt":
        return GaussInt(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)

    def __sub__(self, o: "GaussInt") -> "GaussInt":
        return GaussInt(self.a - o.a, self.b - o.b)

    def __floordiv__(self, o: "GaussInt") -> "GaussInt":
        n = o.a * o.a + o.b * o.b
        re = self.a * o.a + self.b * o.b
        im = self.b * o.a - self.a * o.b
        q_re, r_re = divmod(re, n)
        q_im, r_im = divmod(im, n)
        if r_re or r_im:
            raise ArithmeticError("inexact Gaussian integer division")
        return GaussInt(q_re, q_im)

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, o):
        return isinstance(o, GaussInt) and self.a == o.a and self.b == o.b

    def __repr__(self):
        return f"GaussInt({self.a}, {self.b})"

    def to_scalar(self) -> Scalar:
        return Scalar(self.a, self.b)


@dataclass(frozen=True)
class EchelonCertificate:
    rank: int
    pivot_columns: tuple[int, ...]


def _integer_rows(rows: Sequence[Row]):
    """Scale each row to Gaussian-integer entries; pick int or GaussInt ring."""
    complex_entries = any(v.im for r in rows for v in r.values())
    out = []
    for r in rows:
        items = [(c, v) for c, v in r.items() if not v.is_zero()]
        if not items:
            continue
        for _, v in items:
            if not v.exact:
                raise ModeError("exact elimination received an approximate scalar")
        den = lcm(*(v.re.denominator for _, v in items), *(v.im.denominator for _, v in items))
        if complex_entries:
            out.append({c: GaussInt(int(v.re * den), int(v.im * den)) for c, v in items})
        else:
            out.append({c: int(v.re * den) for c, v in items})
    one = GaussInt(1) if complex_entries else 1
    return out, one


def _bareiss(rows: Sequence[Row], ncols: int):
    """Fraction-free echelon form; returns [(pivot column, pivot row)]."""
    active, prev = _integer_rows(rows)
    zero = prev - prev
    pivots = []
    for c in range(ncols):
        best = None
        for i, r in enumerate(active):
            if c in r and (best is None or len(r) < len(active[best])):
                best = i
        if best is None:
            continue
        prow = active.pop(best)
        p = prow[c]
        rest = [(j, v) for j, v in prow.items() if j != c]
        nxt = []
        for r in active:
            a = r.pop(c, None)
            if a is None:
                nr = {j: (p * v) // prev for j, v in r.items()}
            else:
                nr = {j: p * v for j, v in r.items()}
                for j, v in rest:
                    nr[j] = nr.get(j, zero) - a * v
                nr = {j: w // prev for j, w in nr.items() if w}
            if nr:
                nxt.append(nr)
        active = nxt
        pivots.append((c, prow))
        prev = p
    return pivots


def _exact_nullspace(rows: Sequence[Row], ncols: int) -> list[list[Scalar]]:
    pivots = _bareiss(rows, ncols)
    pivot_cols = {c for c, _ in pivots}
    conv = [(c, {j: (v.to_scalar() if isinstance(v, GaussInt) else Scalar(v)) for j, v in row.items()})
            for c, row in pivots]
    zero = Scalar(0)
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        x: dict[int, Scalar] = {f: Scalar(1)}
        for c, row in reversed(conv):
            s = zero
            for j, v in row.items():
                if j != c and j in x:
                    s = s + v * x[j]
            if not s.is_zero():
                x[c] = -s / row[c]
        basis.append([x.get(j, zero) for j in range(ncols)])
    return basis


def _dense(rows: Sequence[Row], ncols: int) -> np.ndarray:
    a = np.zeros((max(len(rows), 1), ncols), dtype=complex)
    for i, r in enumerate(rows):
        for c, v in r.items():
            a[i, c] = v.to_complex()
    return a


def _svd(a: np.ndarray):
    try:
        return np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"SVD did not converge: {exc}") from exc


def _reverse_rref(k: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Row-reduce basis vectors (rows of k) choosing pivots from the last column."""
    m = k[:, ::-1].copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[i, c]) <= tol:
            continue
        m[[r, i]] = m[[i, r]]
        m[r] /= m[r, c]
        for j in range(rows):
            if j != r:
                m[j] -= m[j, c] * m[r]
        r += 1
    m = m[:, ::-1]
    m[np.abs(m) < 1e-14 * max(1.0, float(np.abs(m).max(initial=0.0)))] = 0
    return m


def _approx_nullspace(rows: Sequence[Row], ncols: int, rel_tol: float) -> list[list[Scalar]]:
    a = _dense(rows, ncols)
    scale = np.linalg.norm(a, axis=0)
    scale[scale == 0] = 1.0
    _, s, vh = _svd(a / scale)
    smax = s.max(initial=0.0)
    rk = int(np.sum(s > rel_tol * smax)) if smax > 0 else 0
    kern = vh[rk:].conj() / scale
    if kern.shape[0] == 0:
        return []
    red = _reverse_rref(kern)
    # rows come out with pivots right to left; list them left to right like the exact path
    return [[Scalar.approx(v) for v in row] for row in red[::-1] if np.any(row)]


def nullspace(rows: Sequence[Row], ncols: int, *, exact: bool = True, rel_tol: float = SVD_REL_TOL) -> list[list[Scalar]]:
    """Basis of {x : A x = 0}.

    Each returned vector has a distinguished *free* column holding 1 and
    is zero on every other vector's free column; free columns are as far
    right as possible, so vectors supported on a column prefix come first.
    """
    if ncols == 0:
        return []
    if exact:
        return _exact_nullspace(rows, ncols)
    return _approx_nullspace(rows, ncols, rel_tol)


def rank(rows: Sequence[Row], ncols: int, *, exact: bool = True, rel_tol: float = SVD_REL_TOL) -> EchelonCertificate:
    """Rank with pivot columns as certificate."""
    if ncols == 0 or not rows:
        return EchelonCertificate(0, ())
    if exact:
        pivots = _bareiss(rows, ncols)
        return EchelonCertificate(len(pivots), tuple(c for c, _ in pivots))
    a = _dense(rows, ncols)
    scale = np.linalg.norm(a, axis=0)
    scale[scale == 0] = 1.0
    _, s, _ = _svd(a / scale)
    smax = s.max(initial=0.0)
    rk = int(np.sum(s > rel_tol * smax)) if smax > 0 else 0
    # Pivot columns from a greedy QR-style sweep over the scaled matrix.
    piv: list[int] = []
    basis = np.zeros((a.shape[0], 0), dtype=complex)
    for c in range(ncols):
        col = a[:, c] / scale[c]
        if basis.shape[1]:
            col = col - basis @ (basis.conj().T @ col)
        nrm = np.linalg.norm(col)
        if nrm > 1e-8 and len(piv) < rk:
            piv.append(c)
            basis = np.column_stack([basis, col / nrm])
    return EchelonCertificate(rk, tuple(piv))
