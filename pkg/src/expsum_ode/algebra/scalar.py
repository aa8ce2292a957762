"""Gaussian-rational and double-precision complex scalars.

A :class:`Scalar` is either *exact* (real and imaginary parts are
:class:`fractions.Fraction`, so arithmetic lives in Q(i)) or *approx*
(parts are floats).  The two never mix silently: combining them raises
:class:`~expsum_ode.errors.ModeError`.  Plain ``int`` and ``Fraction``
operands are promoted into whichever mode the other side uses.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from ..errors import ModeError, ParseError

__all__ = ["Scalar", "parse_scalar", "looks_decimal", "ZERO", "ONE", "I"]


class Scalar:
    __slots__ = ("exact", "re", "im")

    def __init__(self, re=0, im=0, *, exact: bool = True):
        if exact:
            if isinstance(re, float) or isinstance(im, float):
                raise ModeError("float payload for an exact scalar")
            if type(re) is not Fraction:
                re = Fraction(re)
            if type(im) is not Fraction:
                im = Fraction(im)
        else:
            re, im = float(re), float(im)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def approx(cls, z) -> "Scalar":
        z = complex(z)
        return cls(z.real, z.imag, exact=False)

    @classmethod
    def coerce(cls, x, like: "Scalar | None" = None) -> "Scalar":
        """Turn ``x`` into a Scalar in the mode of ``like`` (exact by default)."""
        exact = True if like is None else like.exact
        if isinstance(x, Scalar):
            if x.exact != exact:
                raise ModeError("cannot mix exact and approximate scalars")
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x), exact=exact) if exact else cls(float(x), exact=False)
        if isinstance(x, (float, complex)):
            if exact:
                raise ModeError(f"float value {x!r} in exact context")
            return cls.approx(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # -- conversions --------------------------------------------------
    def to_approx(self) -> "Scalar":
        if not self.exact:
            return self
        return Scalar(float(self.re), float(self.im), exact=False)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    __complex__ = to_complex

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im, exact=self.exact)

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def norm(self):
        """Squared modulus; exact in exact mode."""
        return self.re * self.re + self.im * self.im

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        if not self.exact:
            return False
        return self.im == 0 and self.re.denominator == 1

    def isclose(self, other, tol: float = 1e-9) -> bool:
        return abs(self.to_complex() - complex(other)) <= tol

    def sort_key(self):
        return (self.re, self.im)

    # -- arithmetic ---------------------------------------------------
    def _other(self, other):
        try:
            return Scalar.coerce(other, self)
        except TypeError as exc:
            if isinstance(exc, ModeError):
                raise
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im, exact=self.exact)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im, exact=self.exact)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im, exact=self.exact)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Scalar(a * c, 0, exact=self.exact)
        return Scalar(a * c - b * d, a * d + b * c, exact=self.exact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if not self.exact:
            return Scalar.approx(self.to_complex() / o.to_complex())
        a, b, c, d = self.re, self.im, o.re, o.im
        if not d:
            return Scalar(a / c, b / c)
        den = c * c + d * d
        return Scalar((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (Scalar.coerce(1, self) / self) ** (-k)
        result = Scalar.coerce(1, self)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        # Structural in both modes; tolerant comparison is ``isclose``.
        if isinstance(other, Scalar):
            return self.exact == other.exact and self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)) and not self.exact:
            return self.to_complex() == complex(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.exact, self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- text ---------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        tag = "" if self.exact else "~"
        return f"Scalar({tag}{format_scalar(self)})"


def _fmt_part(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return format(x, ".17g")


def format_scalar(s: Scalar) -> str:
    """Render in the text grammar accepted by :func:`parse_scalar`."""
    re_part, im_part = s.re, s.im
    if not im_part:
        return _fmt_part(re_part) if re_part else "0"
    im_txt = _fmt_part(abs(im_part)) + "i"
    if not re_part:
        return ("-" if im_part < 0 else "") + im_txt
    return _fmt_part(re_part) + ("-" if im_part < 0 else "+") + im_txt


_UNSIGNED = r"(?:\d+(?:/\d+)?|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
_REAL = rf"-?{_UNSIGNED}"
_RE_REAL = re.compile(rf"^({_REAL})$")
_RE_COMPLEX = re.compile(rf"^({_REAL})([+-])({_UNSIGNED})i$")
_RE_IMAG = re.compile(rf"^(-?)({_UNSIGNED})i$")


def looks_decimal(text: str) -> bool:
    """True when the literal uses decimal/exponent notation."""
    return any(c in text for c in ".eE")


def _to_fraction(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {tok!r}: {exc}") from None


def parse_scalar(text: str, *, approx: bool = False) -> Scalar:
    """Parse ``"-4/3"``, ``"1+1i"``, ``"-1i"`` (decimals also accepted).

    Decimal literals are read exactly (``"0.1"`` is 1/10); pass
    ``approx=True`` to get a floating point scalar instead.
    """
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}")
    t = text.strip()
    if m := _RE_REAL.match(t):
        val = Scalar(_to_fraction(m.group(1)))
    elif m := _RE_COMPLEX.match(t):
        im = _to_fraction(m.group(3))
        val = Scalar(_to_fraction(m.group(1)), im if m.group(2) == "+" else -im)
    elif m := _RE_IMAG.match(t):
        im = _to_fraction(m.group(2))
        val = Scalar(0, -im if m.group(1) else im)
    else:
        raise ParseError(f"cannot parse scalar {text!r}")
    return val.to_approx() if approx else val


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
