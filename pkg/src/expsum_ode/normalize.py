"""Reduce an ODE with exponential-sum coefficients to canonical form.

The raw equation is

    leading(z)·f^(n) + A_{n-1}(z)·f^(n-1) + ... + A_0(z)·f = 0

with every A_i a finite sum of constants times exp(μ z), μ rational.
After an optional orientation flip z -> -z, a rescaling w = λ'·z and
multiplication by exp(M·w) it becomes

    exp(γ w)·g^(n) + P_{n-1}(e^w)·g^(n-1) + ... + P_0(e^w)·g = 0

with polynomial P_i.  :class:`NormalizedProblem` records everything
needed to map solutions back (:func:`denormalize_solution`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .algebra import ExpSum, Poly, Scalar
from .errors import ModeError, NoNonzeroFrequency, NormalizationError, UnsupportedProblem

__all__ = [
    "RawProblem",
    "NormalizedProblem",
    "common_frequency",
    "orientation_normalize",
    "to_npde",
    "denormalize_solution",
    "normalize_solution",
]


@dataclass(frozen=True)
class RawProblem:
    """``leading·f^(n) + Σ_{i<n} coefficients[i]·f^(i) = 0``."""

    order: int
    coefficients: tuple[ExpSum, ...]
    leading: ExpSum = None  # type: ignore[assignment]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if self.order < 1:
            raise NormalizationError("order must be >= 1")
        if len(coeffs) != self.order:
            raise NormalizationError(f"expected {self.order} coefficients A_0..A_{self.order - 1}, got {len(coeffs)}")
        exact = coeffs[0].exact
        if self.leading is None:
            object.__setattr__(self, "leading", ExpSum.constant(1, exact=exact))
        if any(c.exact != exact for c in coeffs + (self.leading,)):
            raise ModeError("problem coefficients mix exact and approximate scalars")
        if coeffs[0].is_zero():
            raise NormalizationError("A_0 must not vanish identically")
        if self.leading.is_zero():
            raise NormalizationError("leading coefficient must not vanish identically")

    @property
    def exact(self) -> bool:
        return self.coefficients[0].exact

    def all_coefficients(self) -> tuple[ExpSum, ...]:
        """A_0, ..., A_{n-1}, leading."""
        return self.coefficients + (self.leading,)

    def to_approx(self) -> "RawProblem":
        if not self.exact:
            return self
        return RawProblem(self.order, tuple(c.to_approx() for c in self.coefficients), self.leading.to_approx())

    def frequencies(self) -> set[Scalar]:
        return {f for c in self.all_coefficients() for f in c.frequencies()}

    def check_hypothesis(self) -> None:
        """Rational real frequencies and constant coefficients, or raise."""
        if not self.exact:
            raise NormalizationError("frequencies must be exact rationals")
        for i, c in enumerate(self.all_coefficients()):
            for f, p in c:
                if not f.is_real():
                    raise NormalizationError(f"coefficient {i}: frequency {f} is not real")
                if p.degree > 0:
                    raise NormalizationError(f"coefficient {i}: non-constant polynomial factor {p.pretty()}")

    def last_transcendental(self) -> int | None:
        """Index j of the last A_j with a nonzero frequency, if any."""
        idx = None
        for i, c in enumerate(self.coefficients):
            if any(not f.is_zero() for f in c.frequencies()):
                idx = i
        return idx


@dataclass(frozen=True)
class NormalizedProblem:
    n: int
    gamma: int
    P: tuple[Poly, ...]  # P_0..P_n, P_n = t^gamma
    lambda_prime: Fraction = Fraction(1)
    flipped: bool = False
    shift: int = 0
    signs: tuple[int, ...] = ()
    leading_scale: Scalar = field(default_factory=lambda: Scalar(1))
    source: RawProblem | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.P) != self.n + 1:
            raise NormalizationError("need P_0..P_n")
        if self.P[0].is_zero():
            raise NormalizationError("P_0 must not vanish identically")
        if not self.signs:
            object.__setattr__(self, "signs", (1,) * (self.n + 1))

    @classmethod
    def from_polys(cls, P_low: Sequence[Poly], *, gamma: int = 0) -> "NormalizedProblem":
        """Build directly from P_0..P_{n-1} (P_n = t^gamma)."""
        exact = P_low[0].exact
        P = tuple(p.with_role("t") for p in P_low) + (Poly.monomial(gamma, 1, "t", exact=True),)
        if not exact:
            P = P[:-1] + (P[-1].to_approx(),)
        return cls(n=len(P_low), gamma=gamma, P=P)

    @property
    def exact(self) -> bool:
        return self.P[0].exact

    def to_approx(self) -> "NormalizedProblem":
        if not self.exact:
            return self
        return NormalizedProblem(
            n=self.n,
            gamma=self.gamma,
            P=tuple(p.to_approx() for p in self.P),
            lambda_prime=self.lambda_prime,
            flipped=self.flipped,
            shift=self.shift,
            signs=self.signs,
            leading_scale=self.leading_scale,
            source=self.source.to_approx() if self.source is not None else None,
            warnings=self.warnings,
        )

    def coefficient_expsums(self) -> tuple[ExpSum, ...]:
        """P_i(e^w) as exponential sums in w, i = 0..n."""
        out = []
        for p in self.P:
            out.append(ExpSum([(Scalar.coerce(k, Scalar(0, exact=self.exact)), Poly.constant(c, "z", exact=self.exact))
                               for k, c in enumerate(p.coeffs)], exact=self.exact))
        return tuple(out)

    def sigma(self) -> Fraction:
        """w = sigma·z maps the original variable to the normalized one."""
        return -self.lambda_prime if self.flipped else self.lambda_prime


def _as_fraction(f) -> Fraction:
    if isinstance(f, Scalar):
        if not f.exact or f.im:
            raise NormalizationError(f"frequency {f} is not an exact rational")
        return f.re
    return Fraction(f)


def common_frequency(freqs: Iterable) -> Fraction:
    """Largest positive rational λ' with every frequency an integer multiple of it.

    Raises :class:`NoNonzeroFrequency` when all inputs are zero.
    """
    vals = [abs(_as_fraction(f)) for f in freqs]
    vals = [v for v in vals if v]
    if not vals:
        raise NoNonzeroFrequency("no nonzero frequency: constant-coefficient equation")
    num = 0
    den = lcm(*(v.denominator for v in vals))
    for v in vals:
        num = gcd(num, v.numerator * (den // v.denominator))
    return Fraction(num, den)


def orientation_normalize(p: RawProblem) -> tuple[RawProblem, bool]:
    """Substitute z -> -z when every nonzero frequency is negative.

    With g(w) = f(-w) the coefficient of g^(i) is (-1)^(n-i)·A_i(-w).
    """
    nonzero = [f for f in p.frequencies() if not f.is_zero()]
    if not nonzero or any(f.re > 0 for f in nonzero):
        return p, False
    n = p.order
    coeffs = tuple(c.substitute_scale(-1) * (-1) ** (n - i) for i, c in enumerate(p.coefficients))
    return RawProblem(n, coeffs, p.leading.substitute_scale(-1)), True


def to_npde(p: RawProblem) -> NormalizedProblem:
    """Canonical form with scale λ', orientation flag and exponent shift."""
    p.check_hypothesis()
    q, flipped = orientation_normalize(p)
    n = q.order
    try:
        lam = common_frequency(q.frequencies())
    except NoNonzeroFrequency:
        lam = Fraction(1)

    def exponents(c: ExpSum) -> list[tuple[int, Scalar]]:
        out = []
        for f, poly in c:
            k = f.re / lam
            if k.denominator != 1:
                raise NormalizationError(f"frequency {f} is not a multiple of {lam}")
            out.append((int(k), poly[0]))
        return out

    lead_terms = exponents(q.leading)
    if len(lead_terms) != 1:
        raise UnsupportedProblem("leading coefficient must be a single exponential term c·exp(μz)")
    k_lead, c_lead = lead_terms[0]
    terms = [exponents(c) for c in q.coefficients]
    all_k = [k for ts in terms for k, _ in ts] + [k_lead]
    shift = -min(all_k)
    warnings = []
    if c_lead != 1:
        warnings.append(f"leading coefficient {q.leading.pretty()}: equation divided by {c_lead}")
    elif k_lead != 0:
        warnings.append(f"leading coefficient {q.leading.pretty()} is not constant")
    if shift < 0:
        warnings.append(f"common factor exp({-shift}w) divided out")

    P = []
    for i, ts in enumerate(terms):
        factor = Scalar(lam) ** (i - n) / c_lead
        coeffs = [Scalar(0)] * (max((k for k, _ in ts), default=-shift) + shift + 1)
        for k, c in ts:
            coeffs[k + shift] = coeffs[k + shift] + c * factor
        P.append(Poly(coeffs, "t"))
    gamma = k_lead + shift
    P.append(Poly.monomial(gamma, 1, "t"))
    signs = tuple((-1) ** (n - i) if flipped else 1 for i in range(n + 1))
    return NormalizedProblem(
        n=n,
        gamma=gamma,
        P=tuple(P),
        lambda_prime=lam,
        flipped=flipped,
        shift=shift,
        signs=signs,
        leading_scale=c_lead,
        source=p,
        warnings=tuple(warnings),
    )


def denormalize_solution(s: ExpSum, np_: NormalizedProblem) -> ExpSum:
    """Map a solution g(w) of the normalized equation to f(z) = g(σz)."""
    return s.substitute_scale(np_.sigma())


def normalize_solution(f: ExpSum, np_: NormalizedProblem) -> ExpSum:
    """Inverse of :func:`denormalize_solution`."""
    return f.substitute_scale(1 / np_.sigma())
