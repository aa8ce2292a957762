"""Dense univariate polynomials over :class:`Scalar`.

Coefficients are stored lowest degree first and trailing zeros are
stripped, so the zero polynomial has an empty coefficient tuple and
degree ``-1`` (:data:`NEG_INF_DEGREE`).  Every polynomial carries a role
tag naming its variable; combining different roles is an error.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import ModeError, RoleError
from .scalar import Scalar

__all__ = [
    "Poly",
    "ROLES",
    "NEG_INF_DEGREE",
    "falling_factorial",
    "falling_factorial_poly",
    "poly_gcd",
    "poly_compose",
    "poly_arith",
    "poly_diff",
    "poly_eval",
]

ROLES = ("t", "lambda", "z")
NEG_INF_DEGREE = -1

_VAR_NAMES = {"t": "t", "lambda": "λ", "z": "z"}
_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class Poly:
    __slots__ = ("coeffs", "role", "exact")

    def __init__(self, coeffs: Iterable = (), role: str = "t", *, exact: bool | None = None):
        if role not in ROLES:
            raise ValueError(f"unknown polynomial role {role!r}")
        cs = list(coeffs)
        if exact is None:
            exact = next((c.exact for c in cs if isinstance(c, Scalar)), True)
        like = Scalar(0, exact=exact)
        cs = [Scalar.coerce(c, like) for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "role", role)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c, role: str = "t", *, exact: bool | None = None) -> "Poly":
        return cls([c], role, exact=exact)

    @classmethod
    def monomial(cls, k: int, c=1, role: str = "t", *, exact: bool = True) -> "Poly":
        like = Scalar(0, exact=exact)
        return cls([like] * k + [Scalar.coerce(c, like)], role, exact=exact)

    @classmethod
    def x(cls, role: str = "t", *, exact: bool = True) -> "Poly":
        return cls.monomial(1, 1, role, exact=exact)

    # -- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Scalar(0, exact=self.exact)

    def lead(self) -> Scalar:
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for zero)."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return -1

    def to_approx(self) -> "Poly":
        if not self.exact:
            return self
        return Poly([c.to_approx() for c in self.coeffs], self.role, exact=False)

    def with_role(self, role: str) -> "Poly":
        return Poly(self.coeffs, role, exact=self.exact)

    def _check(self, other: "Poly"):
        if self.role != other.role:
            raise RoleError(f"polynomial roles differ: {self.role} vs {other.role}")
        if self.exact != other.exact:
            raise ModeError("cannot mix exact and approximate polynomials")

    def _lift(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            return Poly.constant(Scalar.coerce(other, Scalar(0, exact=self.exact)), self.role, exact=self.exact)
        return None

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out, self.role, exact=self.exact)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.role, exact=self.exact)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return Poly((), self.role, exact=self.exact)
            out = [Scalar(0, exact=self.exact)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out, self.role, exact=self.exact)
        try:
            s = Scalar.coerce(other, Scalar(0, exact=self.exact))
        except TypeError as exc:
            if isinstance(exc, ModeError):
                raise
            return NotImplemented
        return Poly([c * s for c in self.coeffs], self.role, exact=self.exact)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.constant(1, self.role, exact=self.exact)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.role == other.role and self.exact == other.exact and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.role, self.exact, self.coeffs))

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division; ``divisor`` must be nonzero."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlen = len(divisor.coeffs)
        lead = divisor.lead()
        zero = Scalar(0, exact=self.exact)
        quot = [zero] * max(len(rem) - dlen + 1, 0)
        for k in range(len(rem) - dlen, -1, -1):
            q = rem[k + dlen - 1] / lead
            quot[k] = q
            if q.is_zero():
                continue
            for j, d in enumerate(divisor.coeffs):
                rem[k + j] = rem[k + j] - q * d
            rem[k + dlen - 1] = zero
        return Poly(quot, self.role, exact=self.exact), Poly(rem[: dlen - 1], self.role, exact=self.exact)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (Scalar.coerce(1, self.lead()) / self.lead())

    # -- calculus / evaluation ----------------------------------------
    def diff(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:], self.role, exact=self.exact)

    def __call__(self, x) -> Scalar:
        return self.eval(x)

    def eval(self, x) -> Scalar:
        """Horner evaluation at a Scalar (or int) of the same mode."""
        x = Scalar.coerce(x, Scalar(0, exact=self.exact))
        acc = Scalar(0, exact=self.exact)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c.to_complex()
        return acc

    def shift(self, c) -> "Poly":
        """Return p(x + c) (Taylor shift by repeated synthetic division)."""
        c = Scalar.coerce(c, Scalar(0, exact=self.exact))
        a = list(self.coeffs)
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] = a[j] + c * a[j + 1]
        return Poly(a, self.role, exact=self.exact)

    def compose_scale(self, c) -> "Poly":
        """Return p(c·x)."""
        c = Scalar.coerce(c, Scalar(0, exact=self.exact))
        out, pw = [], Scalar.coerce(1, c)
        for a in self.coeffs:
            out.append(a * pw)
            pw = pw * c
        return Poly(out, self.role, exact=self.exact)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    # -- text ---------------------------------------------------------
    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]}, role={self.role!r}{'' if self.exact else ', approx'})"

    def __str__(self):
        return self.pretty()

    def pretty(self) -> str:
        """Human form, e.g. ``λ³ − 4/3·λ + 16/27``."""
        if self.is_zero():
            return "0"
        var = _VAR_NAMES[self.role]
        parts: list[tuple[str, str]] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            sign = "+"
            if c.is_real() and c.re < 0:
                sign, c = "−", -c
            ctxt = str(c)
            if c.re and c.im:
                ctxt = f"({ctxt})"
            mono = "" if k == 0 else var + ("" if k == 1 else str(k).translate(_SUPERSCRIPTS))
            if not mono:
                term = ctxt
            elif c == 1:
                term = mono
            else:
                term = f"{ctxt}·{mono}"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("−" if first_sign == "−" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def falling_factorial(x, k: int) -> Scalar:
    """x(x-1)...(x-k+1); 1 for k == 0."""
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    x = x if isinstance(x, Scalar) else Scalar.coerce(x)
    acc = Scalar.coerce(1, x)
    for j in range(k):
        acc = acc * (x - j)
    return acc


def falling_factorial_poly(k: int, role: str = "lambda", *, exact: bool = True) -> Poly:
    """The polynomial x^(k falling) in the given role."""
    acc = Poly.constant(1, role, exact=exact)
    for j in range(k):
        acc = acc * Poly([-j, 1], role, exact=exact)
    return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (exact mode only)."""
    if not (a.exact and b.exact):
        raise ModeError("poly_gcd is only reliable in exact mode")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def from_ints(values: Sequence, role: str = "t") -> Poly:
    return Poly([Scalar.coerce(v) for v in values], role)


def poly_compose(a: Poly, b: Poly) -> Poly:
    """a(b(x)) by Horner's scheme; with b = x + c this is a shift."""
    acc = Poly((), a.role, exact=a.exact)
    for c in reversed(a.coeffs):
        acc = acc * b + Poly.constant(c, a.role, exact=a.exact)
    return acc


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Functional form of ``a + b``, ``a * b`` and ``a(b)`` (op: add, mul, compose-shift)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compose-shift":
        if a.role != b.role:
            raise RoleError(f"cannot compose {a.role}-polynomial with {b.role}-polynomial")
        if a.exact != b.exact:
            raise ModeError("cannot mix exact and approximate polynomials")
        return poly_compose(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_diff(a: Poly) -> Poly:
    return a.diff()


def poly_eval(a: Poly, x) -> Scalar:
    return a.eval(x)
