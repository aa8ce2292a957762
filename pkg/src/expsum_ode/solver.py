"""Finite-order solution bases.

Every finite-order solution of the normalized equation (γ = 0) is a sum
over integer-difference root classes of

    exp(λ z) · Σ_{p=0}^{P} z^p · u_p(e^z),     u_p polynomials,

with λ the class base and P < class multiplicity.  For a single class
the u_p are found from one homogeneous linear system; the polynomial
degree is bounded by the largest nonnegative integer root of the last
recurrence polynomial R_d (the coefficient of the highest t-power
produced by a degree-D polynomial is R_d(D)·γ_D).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .algebra import ExpSum, Poly, Scalar, falling_factorial_poly, poly_gcd
from .errors import CapExceeded, InternalInconsistency, UnsupportedProblem
from .linalg import nullspace
from .normalize import NormalizedProblem, RawProblem, denormalize_solution
from .roots import (
    CLASS_TOL,
    CLUSTER_TOL,
    SNAP_DENOMINATOR_BOUND,
    Root,
    RootClass,
    find_roots,
    group_into_classes,
    nonneg_integer_roots,
)
from .transform import TDomainODE, UDomainODE, indicial_polynomial, shift_by_lambda, to_t_domain
from .verify import DEFAULT_TOL, ZeroCertificate, check_solution, independence

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_CAP",
    "RecurrenceData",
    "LogSolution",
    "RootReport",
    "SolutionBasis",
    "recurrence_polys",
    "forward_series",
    "degree_candidates",
    "poly_solutions",
    "pure_exponential",
    "class_ansatz_solve",
    "assemble",
    "class_index",
    "solve_all",
]

DEFAULT_CAP = 500


@dataclass(frozen=True)
class RecurrenceData:
    """R_s(x) = Σ_i β_{i,s}·x^(i falling); R_0(k)γ_k = -Σ_{s≥1} R_s(k-s)γ_{k-s}."""

    lam: Scalar
    R: tuple[Poly, ...]

    @property
    def band(self) -> int:
        return len(self.R) - 1


def recurrence_polys(ode: UDomainODE) -> RecurrenceData:
    d = ode.band
    ffs = [falling_factorial_poly(i, "lambda", exact=ode.exact) for i in range(ode.n + 1)]
    R = []
    for s in range(d + 1):
        acc = Poly((), "lambda", exact=ode.exact)
        for i, b in enumerate(ode.beta):
            if not b[s].is_zero():
                acc = acc + ffs[i] * b[s]
        R.append(acc)
    return RecurrenceData(ode.lam, tuple(R))


def forward_series(rec: RecurrenceData, count: int, gamma0=1) -> list[Scalar]:
    """First ``count`` Frobenius coefficients with γ_0 given.

    Raises ValueError at a resonance (R_0(k) = 0 for some 1 <= k < count).
    """
    like = rec.R[0][0]
    g = [Scalar.coerce(gamma0, like)]
    for k in range(1, count):
        acc = Scalar(0, exact=like.exact)
        for s in range(1, min(rec.band, k) + 1):
            acc = acc + rec.R[s](k - s) * g[k - s]
        r0 = rec.R[0](k)
        if r0.is_zero():
            raise ValueError(f"resonance at k = {k}")
        g.append(-acc / r0)
    return g


def degree_candidates(ode: UDomainODE) -> list[int]:
    """Possible degrees of polynomial solutions: nonnegative integer roots of R_d."""
    rec = recurrence_polys(ode)
    return nonneg_integer_roots(rec.R[-1])


def _normalized(vec: list[Scalar]) -> list[Scalar]:
    lead = next(v for v in vec if not v.is_zero())
    return [v / lead for v in vec]


def poly_solutions(ode: UDomainODE, cap: int = DEFAULT_CAP) -> list[Poly]:
    """Basis of polynomial solutions u of the u-equation.

    Unknowns γ_0..γ_D, D the largest degree candidate; equations are the
    t^N coefficients, N = 0..D+d.  Each basis element is scaled so its
    lowest nonzero coefficient is 1.
    """
    rec = recurrence_polys(ode)
    cands = nonneg_integer_roots(rec.R[-1])
    if not cands:
        return []
    D = max(cands)
    if D > cap:
        raise CapExceeded(D, cap)
    d = rec.band
    rows = []
    for N in range(D + d + 1):
        row = {}
        for s in range(d + 1):
            k = N - s
            if 0 <= k <= D:
                v = rec.R[s](k)
                if not v.is_zero():
                    row[k] = v
        if row:
            rows.append(row)
    return [Poly(_normalized(v), "t", exact=ode.exact) for v in nullspace(rows, D + 1, exact=ode.exact)]


@dataclass(frozen=True)
class LogSolution:
    """exp(λz)·Σ_p z^p·u_p(e^z)."""

    lam: Scalar
    components: tuple[Poly, ...]

    def __post_init__(self):
        comps = list(self.components)
        while comps and comps[-1].is_zero():
            comps.pop()
        if not comps:
            raise ValueError("LogSolution needs a nonzero component")
        object.__setattr__(self, "components", tuple(comps))

    @property
    def top_power(self) -> int:
        return len(self.components) - 1


def assemble(s: LogSolution) -> ExpSum:
    """Expand u_p(e^z) into frequencies λ + k with z-polynomial coefficients."""
    exact = s.lam.exact
    terms = []
    for p, u in enumerate(s.components):
        for k, c in enumerate(u.coeffs):
            if not c.is_zero():
                terms.append((s.lam + k, Poly.monomial(p, c, "z", exact=exact)))
    return ExpSum(terms, exact=exact)


def _t_coefficient_polys(np_: NormalizedProblem) -> list[Poly]:
    """For each power t^s, the polynomial Σ_j P_{j,s}·λ^j."""
    width = max(len(p) for p in np_.P)
    out = []
    for s in range(width):
        out.append(Poly([p[s] for p in np_.P], "lambda", exact=np_.exact))
    return out


def pure_exponential(
    np_: NormalizedProblem,
    *,
    cluster_tol: float = CLUSTER_TOL,
    snap_bound: int = SNAP_DENOMINATOR_BOUND,
    tol: float = 1e-8,
) -> list[Scalar]:
    """Nonzero λ with λ^n + Σ_j P_j(t)·λ^j ≡ 0 in t, so that exp(λz) is a solution."""
    if np_.gamma > 0:
        raise UnsupportedProblem("gamma > 0")
    polys = [p for p in _t_coefficient_polys(np_) if not p.is_zero()]
    if np_.exact:
        g = polys[0]
        for p in polys[1:]:
            g = poly_gcd(g, p)
            if g.degree <= 0:
                return []
        if g.degree <= 0:
            return []
        vals = [r.value for r in find_roots(g, cluster_tol=cluster_tol, snap_bound=snap_bound)]
    else:
        vals = []
        for r in find_roots(polys[0], cluster_tol=cluster_tol):
            z = r.value.to_complex()
            if all(abs(p.eval_complex(z)) <= tol * sum(abs(c.to_complex()) * abs(z) ** k for k, c in enumerate(p.coeffs))
                   for p in polys[1:]):
                vals.append(r.value)
    return [v for v in vals if not v.is_zero()]


def _column_residuals(np_: NormalizedProblem, lam: Scalar, P: int, D: int):
    """Residual of z^p·exp((λ+k)z) for every unknown, keyed by (frequency offset, z-power)."""
    coeffs = np_.coefficient_expsums()
    exact = np_.exact
    rows: dict[tuple[int, int], dict[int, Scalar]] = {}
    for p in range(P + 1):
        for k in range(D + 1):
            col = p * (D + 1) + k
            phi = ExpSum.exp(lam + k, Poly.monomial(p, 1, "z", exact=exact), exact=exact)
            total = ExpSum.zero(exact=exact)
            for a, dphi in zip(coeffs, phi.derivatives(np_.n)):
                if not a.is_zero():
                    total = total + a * dphi
            for freq, q, c in total.slots():
                off = freq - lam
                key = (int(off.re) if exact else round(off.re), q)
                rows.setdefault(key, {})[col] = c
    return [rows[key] for key in sorted(rows)]


def class_ansatz_solve(np_: NormalizedProblem, cls: RootClass, cap: int = DEFAULT_CAP) -> list[LogSolution]:
    """Solutions exp(λz)·Σ_{p<=P} z^p u_p(e^z) for one root class (λ = class base).

    Columns are ordered by (p, k) ascending, so the reduced nullspace basis
    lists solutions with the smallest top z-power first.
    """
    if np_.gamma > 0:
        raise UnsupportedProblem("gamma > 0")
    if not cls.exact and np_.exact:
        np_ = np_.to_approx()
    lam = Scalar.coerce(cls.base, Scalar(0, exact=np_.exact)) if cls.exact else cls.base
    ode = shift_by_lambda(to_t_domain(np_), lam)
    cands = degree_candidates(ode)
    if not cands:
        return []
    D = max(cands)
    if D > cap:
        raise CapExceeded(D, cap)
    P = cls.total - 1
    rows = _column_residuals(np_, lam, P, D)
    vecs = nullspace(rows, (P + 1) * (D + 1), exact=np_.exact)
    out = []
    for v in vecs:
        comps = [Poly(v[p * (D + 1):(p + 1) * (D + 1)], "t", exact=np_.exact) for p in range(P + 1)]
        while comps and comps[-1].is_zero():
            comps.pop()
        top = comps[-1]
        lead = top[top.valuation()]
        out.append(LogSolution(lam, tuple(c * (Scalar.coerce(1, lead) / lead) for c in comps)))
    return out


@dataclass(frozen=True)
class Verification:
    residual: ExpSum
    certificate: ZeroCertificate

    @property
    def ok(self) -> bool:
        return self.certificate.is_zero


@dataclass(frozen=True)
class RootReport:
    root: Root
    class_id: int
    degree_candidates: tuple[int, ...]
    poly_solution_count: int


@dataclass(frozen=True)
class SolutionBasis:
    problem: NormalizedProblem
    indicial: Poly
    roots: tuple[Root, ...]
    classes: tuple[RootClass, ...]
    pure_exponents: tuple[Scalar, ...]
    solutions: tuple[LogSolution, ...]
    normalized: tuple[ExpSum, ...]
    original: tuple[ExpSum, ...]
    verification: tuple[Verification, ...]
    rank: int
    pivot_slots: tuple
    root_reports: tuple[RootReport, ...]
    count_bound: int | None
    notes: tuple[str, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.solutions)


def _count_bound(raw: RawProblem | None, n: int) -> int | None:
    if raw is None:
        return None
    lead = raw.leading
    if not (len(lead) == 1 and lead.terms[0][0].is_zero()):
        return None
    j = raw.last_transcendental()
    return n if j is None else j


def class_index(root: Root, classes: tuple[RootClass, ...]) -> int:
    z = root.value.to_complex()
    for i, c in enumerate(classes):
        for m in c.members():
            if (m == root.value) or (not (m.exact and root.value.exact) and abs(m.to_complex() - z) < 1e-6):
                return i
    raise InternalInconsistency(f"root {root.value} missing from classes")


def solve_all(
    np_: NormalizedProblem,
    cap: int = DEFAULT_CAP,
    *,
    tol: float = DEFAULT_TOL,
    cluster_tol: float = CLUSTER_TOL,
    class_tol: float = CLASS_TOL,
    snap_bound: int = SNAP_DENOMINATOR_BOUND,
) -> SolutionBasis:
    """Complete basis of finite-order solutions, verified in the original variable."""
    if np_.gamma > 0:
        raise UnsupportedProblem(
            f"gamma = {np_.gamma} > 0: irregular singularity at t = 0; constructive solving unavailable "
            "(candidates can still be checked with verify)"
        )
    indicial = indicial_polynomial(np_)
    roots = find_roots(indicial, cluster_tol=cluster_tol, snap_bound=snap_bound)
    classes = group_into_classes(roots, class_tol)
    notes: list[str] = []

    t_exact: TDomainODE = to_t_domain(np_)
    t_approx: TDomainODE | None = None
    reports = []
    for r in roots:
        if r.exact or not np_.exact:
            ode = shift_by_lambda(t_exact, Scalar.coerce(r.value, Scalar(0, exact=np_.exact)) if r.exact else r.value)
        else:
            t_approx = t_approx or to_t_domain(np_.to_approx())
            ode = shift_by_lambda(t_approx, r.value)
        cands = tuple(degree_candidates(ode))
        count = len(poly_solutions(ode, cap)) if cands else 0
        reports.append(RootReport(r, class_index(r, classes), cands, count))
        if not cands:
            notes.append(f"λ = {r.value}: no nonnegative integer degree candidate, no polynomial u")
        elif count == 0:
            notes.append(f"λ = {r.value}: degree candidates {list(cands)} give only the trivial nullspace")

    pure = pure_exponential(np_, cluster_tol=cluster_tol, snap_bound=snap_bound)
    pure = sorted(pure, key=lambda s: (float(s.re), float(s.im)))
    candidates: list[LogSolution] = []
    for lam in pure:
        candidates.append(LogSolution(lam, (Poly.constant(Scalar.coerce(1, lam), "t", exact=lam.exact),)))
    for cls in classes:
        found = class_ansatz_solve(np_, cls, cap)
        if not found:
            notes.append(f"class with base {cls.base}: no finite-order solution")
        candidates.extend(found)

    accepted: list[LogSolution] = []
    accepted_sums: list[ExpSum] = []
    for cand in candidates:
        s = assemble(cand)
        if independence(accepted_sums + [s], tol).rank > len(accepted_sums):
            accepted.append(cand)
            accepted_sums.append(s)
        else:
            log.debug("dropping dependent candidate %s", s.pretty())

    raw = np_.source
    original, checks = [], []
    for s in accepted_sums:
        f = denormalize_solution(s, np_)
        target = raw if raw is not None else np_
        if not f.exact:
            target = target.to_approx()
        r, cert = check_solution(f, target, tol)
        if not cert:
            raise InternalInconsistency(f"constructed solution {f.pretty()} leaves residual {r.pretty()}")
        original.append(f)
        checks.append(Verification(r, cert))

    cert = independence(original, tol)
    if cert.rank != len(original):
        raise InternalInconsistency("emitted basis is linearly dependent")
    if len(original) > np_.n:
        raise InternalInconsistency(f"{len(original)} solutions exceed the order {np_.n}")
    bound = _count_bound(raw, np_.n)
    if bound is not None and len(original) > bound:
        raise InternalInconsistency(f"{len(original)} solutions exceed the count bound {bound}")
    if not original:
        notes.append("no finite-order solution")

    return SolutionBasis(
        problem=np_,
        indicial=indicial,
        roots=roots,
        classes=classes,
        pure_exponents=tuple(pure),
        solutions=tuple(accepted),
        normalized=tuple(accepted_sums),
        original=tuple(original),
        verification=tuple(checks),
        rank=cert.rank,
        pivot_slots=cert.pivot_slots,
        root_reports=tuple(reports),
        count_bound=bound,
        notes=tuple(notes),
    )
