"""Exponential sums  Σ c_k(z)·exp(μ_k z)  with polynomial coefficients."""

from __future__ import annotations

import cmath
from typing import Iterable, Iterator

from ..errors import MergeAmbiguityError, ModeError
from .poly import Poly
from .scalar import Scalar

__all__ = [
    "ExpSum",
    "DEFAULT_MERGE_TOL",
    "expsum_normalize",
    "expsum_add",
    "expsum_mul",
    "expsum_differentiate",
]

DEFAULT_MERGE_TOL = 1e-9


def _merge_approx(pairs: list[tuple[Scalar, Poly]], tol: float) -> list[tuple[Scalar, Poly]]:
    # Single-linkage clusters; a cluster wider than tol is an inconsistent merge.
    m = len(pairs)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    vals = [f.to_complex() for f, _ in pairs]
    for i in range(m):
        for j in range(i + 1, m):
            if abs(vals[i] - vals[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        if len(members) > 1:
            diam = max(abs(vals[a] - vals[b]) for a in members for b in members)
            if diam > tol:
                raise MergeAmbiguityError(
                    f"frequencies {[vals[i] for i in members]} chain within tol={tol} but span {diam:.3g}"
                )
        freq = Scalar.approx(sum(vals[i] for i in members) / len(members))
        poly = pairs[members[0]][1]
        for i in members[1:]:
            poly = poly + pairs[i][1]
        out.append((freq, poly))
    return out


def expsum_normalize(terms: Iterable[tuple[Scalar, Poly]], exact: bool, tol: float = DEFAULT_MERGE_TOL):
    """Merge equal frequencies, drop zero coefficients, sort by (re, im)."""
    pairs = []
    for freq, poly in terms:
        if freq.exact != exact or poly.exact != exact:
            raise ModeError("ExpSum terms must share one scalar mode")
        if poly.role != "z":
            poly = poly.with_role("z")
        pairs.append((freq, poly))
    if exact:
        merged: dict[Scalar, Poly] = {}
        for freq, poly in pairs:
            merged[freq] = merged[freq] + poly if freq in merged else poly
        items = list(merged.items())
    else:
        items = _merge_approx(pairs, tol)
    items = [(f, p) for f, p in items if not p.is_zero()]
    items.sort(key=lambda fp: fp[0].sort_key())
    return tuple(items)


class ExpSum:
    """Immutable canonical exponential sum.

    ``terms`` is a tuple of ``(frequency, coefficient polynomial in z)``
    pairs with distinct frequencies, nonzero coefficients, sorted by
    frequency.  The empty sum is the zero function.
    """

    __slots__ = ("terms", "exact", "tol")

    def __init__(self, terms: Iterable = (), *, exact: bool | None = None, tol: float = DEFAULT_MERGE_TOL):
        terms = list(terms)
        if exact is None:
            exact = terms[0][0].exact if terms else True
        object.__setattr__(self, "terms", expsum_normalize(terms, exact, tol))
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "tol", tol)

    def __setattr__(self, name, value):
        raise AttributeError("ExpSum is immutable")

    @classmethod
    def zero(cls, *, exact: bool = True) -> "ExpSum":
        return cls((), exact=exact)

    @classmethod
    def exp(cls, freq, coef=1, *, exact: bool | None = None) -> "ExpSum":
        """``coef·exp(freq·z)``; ``coef`` may be a scalar or a z-polynomial."""
        if exact is None:
            exact = freq.exact if isinstance(freq, Scalar) else True
        like = Scalar(0, exact=exact)
        freq = Scalar.coerce(freq, like)
        poly = coef if isinstance(coef, Poly) else Poly.constant(Scalar.coerce(coef, like), "z", exact=exact)
        return cls([(freq, poly)], exact=exact)

    @classmethod
    def constant(cls, c, *, exact: bool = True) -> "ExpSum":
        return cls.exp(0, c, exact=exact)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Scalar, Poly]]:
        return iter(self.terms)

    def frequencies(self) -> tuple[Scalar, ...]:
        return tuple(f for f, _ in self.terms)

    def coefficient(self, freq) -> Poly:
        freq = Scalar.coerce(freq, Scalar(0, exact=self.exact))
        for f, p in self.terms:
            if f == freq or (not self.exact and f.isclose(freq, self.tol)):
                return p
        return Poly((), "z", exact=self.exact)

    def slots(self) -> Iterator[tuple[Scalar, int, Scalar]]:
        """Yield ``(frequency, z-power, coefficient)`` for nonzero entries."""
        for f, p in self.terms:
            for k, c in enumerate(p.coeffs):
                if not c.is_zero():
                    yield f, k, c

    def max_abs(self) -> float:
        return max((p.max_abs() for _, p in self.terms), default=0.0)

    def to_approx(self) -> "ExpSum":
        if not self.exact:
            return self
        return ExpSum([(f.to_approx(), p.to_approx()) for f, p in self.terms], exact=False, tol=self.tol)

    def _same(self, other: "ExpSum"):
        if self.exact != other.exact:
            raise ModeError("cannot mix exact and approximate exponential sums")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        self._same(other)
        return ExpSum(self.terms + other.terms, exact=self.exact, tol=self.tol)

    def __neg__(self):
        return ExpSum([(f, -p) for f, p in self.terms], exact=self.exact, tol=self.tol)

    def __sub__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExpSum):
            self._same(other)
            prods = [(f + g, p * q) for f, p in self.terms for g, q in other.terms]
            return ExpSum(prods, exact=self.exact, tol=self.tol)
        if isinstance(other, Poly):
            return ExpSum([(f, p * other.with_role("z")) for f, p in self.terms], exact=self.exact, tol=self.tol)
        try:
            s = Scalar.coerce(other, Scalar(0, exact=self.exact))
        except TypeError as exc:
            if isinstance(exc, ModeError):
                raise
            return NotImplemented
        return ExpSum([(f, p * s) for f, p in self.terms], exact=self.exact, tol=self.tol)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ExpSum):
            return self.exact == other.exact and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.exact, self.terms))

    # -- calculus -----------------------------------------------------
    def differentiate(self) -> "ExpSum":
        """(μ, c) -> (μ, c' + μ·c) termwise."""
        return ExpSum([(f, p.diff() + p * f) for f, p in self.terms], exact=self.exact, tol=self.tol)

    def derivative(self, k: int) -> "ExpSum":
        out = self
        for _ in range(k):
            out = out.differentiate()
        return out

    def derivatives(self, n: int) -> list["ExpSum"]:
        """[f, f', ..., f^(n)]."""
        out = [self]
        for _ in range(n):
            out.append(out[-1].differentiate())
        return out

    def substitute_scale(self, sigma) -> "ExpSum":
        """The function z -> f(σ·z)."""
        sigma = Scalar.coerce(sigma, Scalar(0, exact=self.exact))
        return ExpSum([(f * sigma, p.compose_scale(sigma)) for f, p in self.terms], exact=self.exact, tol=self.tol)

    def evaluate(self, z0) -> complex:
        """Numeric value at ``z0``; raises OverflowError on exp overflow."""
        z0 = complex(z0)
        total = 0j
        for f, p in self.terms:
            total += p.eval_complex(z0) * cmath.exp(f.to_complex() * z0)
        return total

    # -- text ---------------------------------------------------------
    def __repr__(self):
        return f"ExpSum({self.pretty()})"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for f, p in self.terms:
            coef = p.pretty()
            sign = "+"
            if len([c for c in p.coeffs if not c.is_zero()]) > 1:
                coef = f"({coef})"
            elif coef.startswith("−"):
                sign, coef = "−", coef[1:]
            e = f"e^({f}·z)"
            term = coef if f.is_zero() else (e if coef == "1" else f"{coef}·{e}")
            out = (("−" if sign == "−" else "") + term) if not out else f"{out} {sign} {term}"
        return out


def expsum_add(f: ExpSum, g: ExpSum) -> ExpSum:
    return f + g


def expsum_mul(f: ExpSum, g: ExpSum) -> ExpSum:
    return f * g


def expsum_differentiate(f: ExpSum) -> ExpSum:
    """Term (μ, c(z)) becomes (μ, c'(z) + μ·c(z))."""
    return f.differentiate()
