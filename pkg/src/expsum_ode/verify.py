"""Residual substitution, zero tests and linear independence of candidates."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import ExpSum, Scalar
from .errors import ModeError
from .linalg import rank
from .normalize import NormalizedProblem, RawProblem

__all__ = [
    "DEFAULT_TOL",
    "ZeroCertificate",
    "IndependenceCertificate",
    "SpotCheck",
    "residual",
    "residual_scale",
    "is_zero",
    "check_solution",
    "independence",
    "numeric_spotcheck",
]

DEFAULT_TOL = 1e-9

Problem = RawProblem | NormalizedProblem


def _coefficients(p: Problem) -> tuple[ExpSum, ...]:
    if isinstance(p, RawProblem):
        return p.all_coefficients()
    return p.coefficient_expsums()


def residual(f: ExpSum, p: Problem) -> ExpSum:
    """Σ_i A_i·f^(i), with the leading coefficient as A_n.

    For a normalized problem the leading factor exp(γz) enters as the
    exponential sum of P_n = t^γ.
    """
    coeffs = _coefficients(p)
    if f.exact != coeffs[0].exact:
        raise ModeError("solution and problem use different scalar modes")
    total = ExpSum.zero(exact=f.exact)
    for a, df in zip(coeffs, f.derivatives(len(coeffs) - 1)):
        if not a.is_zero() and not df.is_zero():
            total = total + a * df
    return total


def residual_scale(f: ExpSum, p: Problem) -> float:
    """Magnitude of the largest summand max_i |A_i|·|f^(i)| (coefficient-wise)."""
    coeffs = _coefficients(p)
    best = 0.0
    for a, df in zip(coeffs, f.derivatives(len(coeffs) - 1)):
        best = max(best, a.max_abs() * df.max_abs())
    return best or 1.0


@dataclass(frozen=True)
class ZeroCertificate:
    is_zero: bool
    max_magnitude: float
    threshold: float
    worst_frequency: Scalar | None = None
    worst_power: int | None = None
    worst_coefficient: Scalar | None = None

    def __bool__(self) -> bool:
        return self.is_zero


def is_zero(r: ExpSum, tol: float = DEFAULT_TOL, scale: float = 1.0) -> ZeroCertificate:
    """Exact: structural emptiness.  Approx: every coefficient below tol·scale."""
    worst = None
    mag = 0.0
    for f, k, c in r.slots():
        if abs(c) > mag or worst is None:
            mag, worst = abs(c), (f, k, c)
    threshold = 0.0 if r.exact else tol * scale
    ok = r.is_zero() if r.exact else mag < threshold
    if worst is None:
        return ZeroCertificate(ok, 0.0, threshold)
    return ZeroCertificate(ok, mag, threshold, *worst)


def check_solution(f: ExpSum, p: Problem, tol: float = DEFAULT_TOL) -> tuple[ExpSum, ZeroCertificate]:
    """Residual of ``f`` and its zero certificate (scale from :func:`residual_scale`)."""
    r = residual(f, p)
    return r, is_zero(r, tol, residual_scale(f, p) if not f.exact else 1.0)


@dataclass(frozen=True)
class IndependenceCertificate:
    rank: int
    pivot_slots: tuple[tuple[Scalar, int], ...]


def _slot_index(basis: Sequence[ExpSum], tol: float):
    reps: list[Scalar] = []
    index: dict[tuple[int, int], int] = {}
    per_elem = []
    for f in basis:
        entries = {}
        for freq, k, c in f.slots():
            for ri, rep in enumerate(reps):
                if rep == freq or (not freq.exact and rep.isclose(freq, tol)):
                    break
            else:
                reps.append(freq)
                ri = len(reps) - 1
            col = index.setdefault((ri, k), len(index))
            entries[col] = c
        per_elem.append(entries)
    slots = [None] * len(index)
    for (ri, k), col in index.items():
        slots[col] = (reps[ri], k)
    return per_elem, slots


def independence(basis: Sequence[ExpSum], tol: float = DEFAULT_TOL) -> IndependenceCertificate:
    """Rank of the coefficient matrix over (frequency, z-power) slots."""
    basis = list(basis)
    if not basis:
        return IndependenceCertificate(0, ())
    exact = all(b.exact for b in basis)
    if not exact:
        basis = [b.to_approx() for b in basis]
    rows, slots = _slot_index(basis, tol)
    cert = rank(rows, len(slots), exact=exact)
    return IndependenceCertificate(cert.rank, tuple(slots[c] for c in cert.pivot_columns))


@dataclass(frozen=True)
class SpotCheck:
    max_abs: float
    max_rel: float
    points: tuple[tuple[complex, float | None, float | None], ...]
    overflow: tuple[complex, ...]


def numeric_spotcheck(f: ExpSum, p: Problem, points: Iterable[complex]) -> SpotCheck:
    """Evaluate Σ A_i(z)·f^(i)(z) pointwise in floating point.

    Relative residual is |Σ A_i f^(i)| / Σ |A_i f^(i)|.  Points where an
    exponential overflows are listed in ``overflow`` instead.
    """
    coeffs = _coefficients(p)
    ders = f.derivatives(len(coeffs) - 1)
    max_abs = max_rel = 0.0
    rows, bad = [], []
    for z0 in points:
        z0 = complex(z0)
        try:
            terms = [a.evaluate(z0) * d.evaluate(z0) for a, d in zip(coeffs, ders)]
        except OverflowError:
            bad.append(z0)
            rows.append((z0, None, None))
            continue
        total = sum(terms, 0j)
        if not cmath.isfinite(total):
            bad.append(z0)
            rows.append((z0, None, None))
            continue
        size = sum(abs(t) for t in terms)
        rel = abs(total) / size if size else 0.0
        max_abs, max_rel = max(max_abs, abs(total)), max(max_rel, rel)
        rows.append((z0, abs(total), rel))
    return SpotCheck(max_abs, max_rel, tuple(rows), tuple(bad))
