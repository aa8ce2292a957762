"""t = e^z change of variables, the λ-shift v = t^λ·u, and the indicial polynomial.

Conventions: a :class:`TDomainODE` with coefficients α_0..α_n means
Σ_i α_i(t)·t^i·v^(i)(t) = 0, and a :class:`UDomainODE` with β_0..β_n means
Σ_i β_i(t)·t^i·u^(i)(t) = 0.  With θ = t·d/dt one has θ^j = Σ_i S(j, i)·t^i·D^i,
so α_i = Σ_j S(j, i)·P_j, i.e. row i of the Stirling matrix applied to the
column (P_0, ..., P_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .algebra import Poly, Scalar, falling_factorial, falling_factorial_poly
from .errors import UnsupportedProblem
from .normalize import NormalizedProblem

__all__ = [
    "binomial_table",
    "stirling_matrix",
    "stirling_closed_form",
    "q_matrix",
    "TDomainODE",
    "UDomainODE",
    "to_t_domain",
    "shift_by_lambda",
    "indicial_polynomial",
    "indicial_from_t_domain",
]


@lru_cache(maxsize=None)
def binomial_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Pascal's triangle rows 0..n, padded with zeros to width n+1."""
    rows = [[1] + [0] * n]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, n + 1)])
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def stirling_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """m[i][j] = S(j, i), Stirling numbers of the second kind, 0 <= i, j <= n.

    Built from m[i][j] = i·m[i][j-1] + m[i-1][j-1] with m[0][0] = 1.
    """
    m = [[0] * (n + 1) for _ in range(n + 1)]
    m[0][0] = 1
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            m[i][j] = i * m[i][j - 1] + m[i - 1][j - 1]
    return tuple(tuple(r) for r in m)


def stirling_closed_form(i: int, j: int) -> int:
    # (1/i!) Σ_k (-1)^k C(i,k) (i-k)^j, with 0^0 = 1
    total = sum((-1) ** k * comb(i, k) * (i - k) ** j for k in range(i + 1))
    q, r = divmod(total, factorial(i))
    assert r == 0
    return q


def q_matrix(lam, n: int) -> tuple[tuple[Scalar, ...], ...]:
    """q[i][j] = C(j, i)·λ^(j-i falling) for i <= j, zero below the diagonal."""
    lam = lam if isinstance(lam, Scalar) else Scalar.coerce(lam)
    binom = binomial_table(n)
    ff = [falling_factorial(lam, k) for k in range(n + 1)]
    zero = Scalar(0, exact=lam.exact)
    return tuple(
        tuple(ff[j - i] * binom[j][i] if j >= i else zero for j in range(n + 1))
        for i in range(n + 1)
    )


def _strip_t_power(polys: list[Poly]) -> tuple[tuple[Poly, ...], int]:
    vals = [p.valuation() for p in polys if not p.is_zero()]
    k = min(vals) if vals else 0
    return tuple(Poly(p.coeffs[k:], "t", exact=p.exact) for p in polys), k


@dataclass(frozen=True)
class TDomainODE:
    alpha: tuple[Poly, ...]

    @property
    def n(self) -> int:
        return len(self.alpha) - 1

    @property
    def exact(self) -> bool:
        return self.alpha[0].exact

    def derivative_coefficients(self) -> tuple[tuple[Poly, ...], int]:
        """Coefficients of v^(i) (α_i·t^i) with the common t-power removed."""
        return _strip_t_power([a * Poly.monomial(i, 1, "t", exact=a.exact) for i, a in enumerate(self.alpha)])


@dataclass(frozen=True)
class UDomainODE:
    lam: Scalar
    beta: tuple[Poly, ...]

    @property
    def n(self) -> int:
        return len(self.beta) - 1

    @property
    def exact(self) -> bool:
        return self.beta[0].exact

    @property
    def band(self) -> int:
        """d = max_i deg β_i."""
        return max(b.degree for b in self.beta)

    def derivative_coefficients(self) -> tuple[tuple[Poly, ...], int]:
        """Coefficients of u^(i) (β_i·t^i) with the common t-power removed."""
        return _strip_t_power([b * Poly.monomial(i, 1, "t", exact=b.exact) for i, b in enumerate(self.beta)])


def to_t_domain(np_: NormalizedProblem) -> TDomainODE:
    if np_.gamma > 0:
        raise UnsupportedProblem(f"gamma = {np_.gamma} > 0: t = 0 is an irregular singular point")
    n = np_.n
    m = stirling_matrix(n)
    alpha = []
    for i in range(n + 1):
        acc = Poly((), "t", exact=np_.exact)
        for j in range(i, n + 1):
            if m[i][j]:
                acc = acc + np_.P[j] * m[i][j]
        alpha.append(acc)
    return TDomainODE(tuple(alpha))


def shift_by_lambda(ode: TDomainODE, lam) -> UDomainODE:
    """Equation for u where v = t^λ·u: β_i = Σ_j q_{i,j}(λ)·α_j."""
    lam = Scalar.coerce(lam, Scalar(0, exact=ode.exact))
    n = ode.n
    q = q_matrix(lam, n)
    beta = []
    for i in range(n + 1):
        acc = Poly((), "t", exact=ode.exact)
        for j in range(i, n + 1):
            if not q[i][j].is_zero():
                acc = acc + ode.alpha[j] * q[i][j]
        beta.append(acc)
    return UDomainODE(lam, tuple(beta))


def indicial_polynomial(np_: NormalizedProblem) -> Poly:
    """λ^n + P_{n-1}(0)·λ^(n-1) + ... + P_0(0)."""
    if np_.gamma > 0:
        raise UnsupportedProblem(f"gamma = {np_.gamma} > 0: no indicial equation at an irregular singularity")
    coeffs = [p[0] for p in np_.P[:-1]] + [Scalar.coerce(1, np_.P[0][0])]
    return Poly(coeffs, "lambda", exact=np_.exact)


def indicial_from_t_domain(ode: TDomainODE) -> Poly:
    """Σ_i α_i(0)·λ^(i falling); must agree with :func:`indicial_polynomial`."""
    acc = Poly((), "lambda", exact=ode.exact)
    for i, a in enumerate(ode.alpha):
        if not a[0].is_zero():
            acc = acc + falling_factorial_poly(i, "lambda", exact=ode.exact) * a[0]
    return acc
