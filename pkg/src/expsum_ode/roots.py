"""Roots of the indicial polynomial and their integer-difference classes.

Exact pipeline: Gaussian-rational roots by the rational root theorem over
Z[i] with exact deflation, then a square-free split of whatever is left,
whose (now simple) roots are found numerically and snapped back to Q(i)
when possible.  Approximate polynomials go straight to companion-matrix
eigenvalues with clustering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Sequence

import numpy as np

from .algebra import Poly, Scalar, poly_gcd
from .errors import NumericFailure

__all__ = [
    "Root",
    "RootClass",
    "exact_roots",
    "numeric_roots",
    "snap_to_exact",
    "find_roots",
    "group_into_classes",
    "squarefree_decomposition",
    "nonneg_integer_roots",
]

CLUSTER_TOL = 1e-8
CLASS_TOL = 1e-8
SNAP_DENOMINATOR_BOUND = 64
DIVISOR_CAP = 10**5
_MAX_NORM_FOR_TRIAL_DIVISION = 10**12


@dataclass(frozen=True)
class Root:
    value: Scalar
    multiplicity: int

    @property
    def exact(self) -> bool:
        return self.value.exact


@dataclass(frozen=True)
class RootClass:
    """Roots base + offset whose pairwise differences are integers."""

    base: Scalar
    offsets: tuple[int, ...]
    multiplicities: tuple[int, ...]
    warnings: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    @property
    def exact(self) -> bool:
        return self.base.exact

    def members(self) -> tuple[Scalar, ...]:
        return tuple(self.base + o for o in self.offsets)


def _cplx_key(s: Scalar):
    return (float(s.re), float(s.im))


# -- Gaussian integer divisors -------------------------------------------------

def _int_divisors(n: int) -> list[int] | None:
    if n > _MAX_NORM_FOR_TRIAL_DIVISION:
        return None
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _two_squares(m: int) -> list[tuple[int, int]]:
    # a > 0, b >= 0: one representative per associate class
    out = []
    for a in range(1, isqrt(m) + 1):
        b2 = m - a * a
        b = isqrt(b2)
        if b * b == b2:
            out.append((a, b))
    return out


def _gaussian_divisors(a: int, b: int) -> list[tuple[int, int]] | None:
    n = a * a + b * b
    divs = _int_divisors(n)
    if divs is None:
        return None
    out = []
    for m in divs:
        for c, d in _two_squares(m):
            # (a+bi)/(c+di) in Z[i]?
            if (a * c + b * d) % m == 0 and (b * c - a * d) % m == 0:
                out.append((c, d))
    return out


def _gaussian_integer_coeffs(p: Poly) -> list[tuple[int, int]]:
    den = lcm(*(c.re.denominator for c in p.coeffs), *(c.im.denominator for c in p.coeffs))
    return [(int(c.re * den), int(c.im * den)) for c in p.coeffs]


def _deflate(p: Poly, r: Scalar) -> Poly:
    q, rem = p.divmod(Poly([-r, Scalar(1)], p.role))
    assert rem.is_zero()
    return q


def exact_roots(p: Poly, divisor_cap: int = DIVISOR_CAP) -> tuple[list[Root], Poly]:
    """Roots of ``p`` lying in Q(i), with multiplicity, plus the cofactor.

    Candidates are u·a/b with a | p(0) and b | lead(p) in Z[i] and u a
    unit; each is verified by exact evaluation and deflated repeatedly.
    If the candidate count would exceed ``divisor_cap`` (or the norms are
    too large to factor by trial division) only the zero root is handled.
    """
    if p.is_zero():
        raise ValueError("exact_roots of the zero polynomial")
    if not p.exact:
        raise ValueError("exact_roots needs exact coefficients")
    found: list[Root] = []
    v = p.valuation()
    if v > 0:
        found.append(Root(Scalar(0), v))
        p = Poly(p.coeffs[v:], p.role)
    if p.degree <= 0:
        return found, p
    ints = _gaussian_integer_coeffs(p)
    d0 = _gaussian_divisors(*ints[0])
    dn = _gaussian_divisors(*ints[-1])
    if d0 is None or dn is None or 4 * len(d0) * len(dn) > divisor_cap:
        return found, p
    seen: set[tuple[Fraction, Fraction]] = set()
    cur = p
    units = ((1, 0), (0, 1), (-1, 0), (0, -1))
    for (qa, qb) in dn:
        qn = qa * qa + qb * qb
        for (pa, pb) in d0:
            # (pa+pb i)/(qa+qb i)
            re = Fraction(pa * qa + pb * qb, qn)
            im = Fraction(pb * qa - pa * qb, qn)
            for ua, ub in units:
                cre, cim = ua * re - ub * im, ua * im + ub * re
                if (cre, cim) in seen:
                    continue
                seen.add((cre, cim))
                cand = Scalar(cre, cim)
                z = cand.to_complex()
                scale = sum(abs(c.to_complex()) * abs(z) ** k for k, c in enumerate(cur.coeffs))
                if abs(cur.eval_complex(z)) > 1e-6 * scale:
                    continue
                mult = 0
                while cur.degree > 0 and cur.eval(cand).is_zero():
                    cur = _deflate(cur, cand)
                    mult += 1
                if mult:
                    found.append(Root(cand, mult))
                if cur.degree <= 0:
                    return found, cur
    return found, cur


# -- numeric -------------------------------------------------------------------

def _weighted_norm(coeffs: Sequence[complex], z: complex) -> float:
    return sum(abs(c) * abs(z) ** k for k, c in enumerate(coeffs))


def _polish(coeffs: Sequence[complex], z: complex, steps: int = 3) -> complex:
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]

    def ev(cs, x):
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    for _ in range(steps):
        d = ev(dcoeffs, z)
        if d == 0:
            break
        step = ev(coeffs, z) / d
        if not np.isfinite(step):
            break
        z_new = z - step
        if abs(ev(coeffs, z_new)) >= abs(ev(coeffs, z)):
            break
        z = z_new
    return z


def _eig_roots(coeffs: Sequence[complex]) -> list[complex]:
    if len(coeffs) <= 1:
        return []
    try:
        rs = np.roots(list(reversed(coeffs)))
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"companion eigenvalues did not converge: {exc}") from exc
    if len(rs) != len(coeffs) - 1 or not np.all(np.isfinite(rs)):
        raise NumericFailure("companion matrix eigenvalue computation failed")
    return [complex(r) for r in rs]


def _clean(z: complex, rel: float = 1e-14) -> complex:
    # Drop a real or imaginary part that is pure roundoff.
    size = max(abs(z), 1.0)
    return complex(0.0 if abs(z.real) < rel * size else z.real, 0.0 if abs(z.imag) < rel * size else z.imag)


def _certify(coeffs: Sequence[complex], z: complex, tol: float) -> None:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    if abs(acc) > tol * _weighted_norm(coeffs, z):
        raise NumericFailure(f"root {z} fails backward-error certificate |p(r)| = {abs(acc):.3g}")


def _cluster(zs: list[complex], radius: float) -> list[list[complex]]:
    parent = list(range(len(zs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) < radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i, z in enumerate(zs):
        groups.setdefault(find(i), []).append(z)
    return list(groups.values())


def numeric_roots(p: Poly, cluster_tol: float = CLUSTER_TOL) -> tuple[Root, ...]:
    """Approximate roots with multiplicities.

    Eigenvalues of the companion matrix are Newton-polished; roots within
    sqrt(cluster_tol) of each other (the spread a multiple root acquires
    in double precision) are merged into one root whose multiplicity is
    the cluster size.  Every reported root satisfies
    |p(r)| <= cluster_tol·Σ|a_k||r|^k, else :class:`NumericFailure`.
    """
    if p.is_zero():
        raise ValueError("numeric_roots of the zero polynomial")
    coeffs = [c.to_complex() for c in p.coeffs]
    out = []
    for group in _cluster(_eig_roots(coeffs), cluster_tol ** 0.5):
        # The mean of a cluster is well conditioned; Newton on p^(m-1),
        # where the root is simple, then recovers full precision.
        m = len(group)
        dcoeffs = coeffs
        for _ in range(m - 1):
            dcoeffs = [k * c for k, c in enumerate(dcoeffs)][1:]
        center = _clean(_polish(dcoeffs, sum(group) / m, steps=5))
        _certify(coeffs, center, cluster_tol)
        out.append(Root(Scalar.approx(center), m))
    out.sort(key=lambda r: _cplx_key(r.value))
    return tuple(out)


def snap_to_exact(
    r, p: Poly, denominator_bound: int = SNAP_DENOMINATOR_BOUND, rel_tol: float = 1e-6
) -> Scalar | None:
    """A Gaussian rational within ``rel_tol`` of ``r`` that is an exact root of ``p``, if any."""
    z = complex(r)
    radius = rel_tol * max(1.0, abs(z))
    for q in range(1, denominator_bound + 1):
        cand = Scalar(Fraction(round(z.real * q), q), Fraction(round(z.imag * q), q))
        if abs(cand.to_complex() - z) <= radius and p.eval(cand).is_zero():
            return cand
    return None


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = c·Π f_i^i with f_i square-free, pairwise coprime."""
    out = []
    dp = p.diff()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.diff()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.diff()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def find_roots(
    p: Poly,
    *,
    cluster_tol: float = CLUSTER_TOL,
    snap_bound: int = SNAP_DENOMINATOR_BOUND,
    divisor_cap: int = DIVISOR_CAP,
) -> tuple[Root, ...]:
    """All roots of ``p``, exact where they lie in Q(i); multiplicities sum to deg p."""
    if not p.exact:
        return numeric_roots(p, cluster_tol)
    found, rest = exact_roots(p, divisor_cap)
    if rest.degree > 0:
        for factor, mult in squarefree_decomposition(rest):
            # square-free factor: roots are simple, no clustering needed
            coeffs = [c.to_complex() for c in factor.coeffs]
            remaining = factor
            for z in _eig_roots(coeffs):
                z = _clean(_polish(coeffs, z, steps=5))
                snapped = snap_to_exact(z, remaining, snap_bound) if remaining.degree > 0 else None
                if snapped is not None:
                    remaining = _deflate(remaining, snapped)
                    found.append(Root(snapped, mult))
                else:
                    _certify(coeffs, z, cluster_tol)
                    found.append(Root(Scalar.approx(z), mult))
    found.sort(key=lambda r: _cplx_key(r.value))
    total = sum(r.multiplicity for r in found)
    if total != p.degree:
        raise NumericFailure(f"found {total} roots for a degree {p.degree} polynomial")
    return tuple(found)


def nonneg_integer_roots(p: Poly, tol: float = 1e-4) -> list[int]:
    """Nonnegative integer roots of a nonzero polynomial.

    Exact: rational root theorem.  Approximate: numeric roots within
    ``tol`` of a nonnegative integer (over-inclusion is harmless for the
    callers, which confirm by a nullspace computation).
    """
    if p.is_zero():
        raise ValueError("every integer is a root of the zero polynomial")
    if p.degree == 0:
        return []
    if p.exact:
        found, rest = exact_roots(p)
        ints = {int(r.value.re) for r in found if r.value.is_integer() and r.value.re >= 0}
        if rest.degree > 0:
            for r in numeric_roots(rest.to_approx()):
                k = round(r.value.re)
                if k >= 0 and rest.eval(k).is_zero():
                    ints.add(k)
        return sorted(ints)
    coeffs = [c.to_complex() for c in p.coeffs]
    out = set()
    for z in _eig_roots(coeffs):
        k = round(z.real)
        if k >= 0 and abs(z - k) < tol:
            out.add(k)
    return sorted(out)


def _integer_difference(a: Scalar, b: Scalar, tol: float) -> tuple[bool, float]:
    """(is integer difference, distance to nearest integer)."""
    if a.exact and b.exact:
        d = a - b
        return d.is_integer(), 0.0
    d = a.to_complex() - b.to_complex()
    dist = abs(complex(d.real - round(d.real), d.imag))
    return dist < tol, dist


def group_into_classes(roots: Iterable[Root], class_tol: float = CLASS_TOL) -> tuple[RootClass, ...]:
    """Partition roots into maximal classes with integer pairwise differences.

    The base of a class is its member of smallest real part (ties: smallest
    imaginary part), so every offset is a nonnegative integer.
    """
    roots = sorted(roots, key=lambda r: _cplx_key(r.value))
    m = len(roots)
    parent = list(range(m))
    near: dict[int, list[str]] = {}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            ok, dist = _integer_difference(roots[i].value, roots[j].value, class_tol)
            if ok:
                parent[find(i)] = find(j)
            elif dist < 10 * class_tol:
                msg = (f"roots {roots[i].value} and {roots[j].value} differ by {dist:.2e} from an integer;"
                       " treated as different classes")
                near.setdefault(i, []).append(msg)
                near.setdefault(j, []).append(msg)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    classes = []
    for members in groups.values():
        base_idx = min(members, key=lambda i: _cplx_key(roots[i].value))
        base = roots[base_idx].value
        entries = []
        for i in members:
            v = roots[i].value
            if v.exact and base.exact:
                off = int((v - base).re)
            else:
                off = round(v.to_complex().real - base.to_complex().real)
            entries.append((off, roots[i].multiplicity))
        entries.sort()
        # Merge members that land on the same offset (approx noise).
        offs, mults = [], []
        for off, mu in entries:
            if offs and offs[-1] == off:
                mults[-1] += mu
            else:
                offs.append(off)
                mults.append(mu)
        warns = sorted({w for i in members for w in near.get(i, [])})
        classes.append(RootClass(base, tuple(offs), tuple(mults), tuple(warns)))
    classes.sort(key=lambda c: _cplx_key(c.base))
    return tuple(classes)
