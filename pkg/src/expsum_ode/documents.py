"""JSON problem and solution documents.

Scalars are always JSON strings in the grammar of :func:`parse_scalar`.

Problem::

    {"order": n,
     "leading": [term, ...],                  # optional, default constant 1
     "coefficients": [[term, ...], ...]}      # A_0 .. A_{n-1}

    term = {"freq": "1/2", "coef": "-3"}  or  {"freq": "1", "zpoly": ["0", "1"]}

Solution::

    {"basis": [[{"freq": "-4/3", "zpoly": ["1"]}, ...], ...], "metadata": {...}}

A bare list of terms is accepted as a single candidate.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import ExpSum, Poly, Scalar, format_scalar, looks_decimal, parse_scalar
from .errors import ParseError
from .normalize import RawProblem

__all__ = [
    "read_json",
    "has_decimal",
    "parse_problem",
    "parse_solutions",
    "expsum_to_terms",
    "poly_to_list",
    "scalar_text",
]


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _walk_scalars(doc: Any):
    if isinstance(doc, dict):
        for key, v in doc.items():
            if key in ("freq", "coef") and isinstance(v, str):
                yield v
            elif key == "zpoly" and isinstance(v, list):
                yield from (x for x in v if isinstance(x, str))
            else:
                yield from _walk_scalars(v)
    elif isinstance(doc, list):
        for v in doc:
            yield from _walk_scalars(v)


def has_decimal(doc: Any) -> bool:
    """True when any scalar literal in the document uses decimal notation."""
    return any(looks_decimal(s) for s in _walk_scalars(doc))


def _term(t: Any, where: str) -> tuple[Scalar, Poly]:
    if not isinstance(t, dict) or "freq" not in t:
        raise ParseError(f"{where}: term must be an object with 'freq'")
    freq = parse_scalar(t["freq"])
    if ("coef" in t) == ("zpoly" in t):
        raise ParseError(f"{where}: term needs exactly one of 'coef' or 'zpoly'")
    if "coef" in t:
        return freq, Poly.constant(parse_scalar(t["coef"]), "z")
    zp = t["zpoly"]
    if not isinstance(zp, list):
        raise ParseError(f"{where}: 'zpoly' must be an array")
    return freq, Poly([parse_scalar(c) for c in zp], "z", exact=True)


def _term_list(ts: Any, where: str) -> ExpSum:
    if not isinstance(ts, list):
        raise ParseError(f"{where}: expected a list of terms")
    return ExpSum([_term(t, f"{where}[{k}]") for k, t in enumerate(ts)], exact=True)


def parse_problem(doc: Any) -> RawProblem:
    """Problem document to an exact :class:`RawProblem`."""
    if not isinstance(doc, dict):
        raise ParseError("problem document must be a JSON object")
    order = doc.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ParseError("'order' must be an integer >= 1")
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, list) or len(coeffs) != order:
        raise ParseError(f"'coefficients' must list exactly {order} term lists (indices 0..{order - 1})")
    parsed = tuple(_term_list(c, f"coefficients[{i}]") for i, c in enumerate(coeffs))
    if parsed[0].is_zero():
        raise ParseError("coefficient 0 must have a nonzero term")
    leading = _term_list(doc["leading"], "leading") if "leading" in doc else None
    if leading is not None and leading.is_zero():
        raise ParseError("leading coefficient must be nonzero")
    return RawProblem(order, parsed, leading)


def parse_solutions(doc: Any) -> list[ExpSum]:
    """Candidates from a solution document, a bare basis list or a single term list."""
    if isinstance(doc, dict):
        if "basis" not in doc:
            raise ParseError("solution document needs a 'basis' array")
        basis = doc["basis"]
    else:
        basis = doc
    if not isinstance(basis, list):
        raise ParseError("'basis' must be an array")
    if basis and all(isinstance(t, dict) for t in basis):
        basis = [basis]
    return [_term_list(ts, f"basis[{i}]") for i, ts in enumerate(basis)]


def scalar_text(s: Scalar) -> str:
    return format_scalar(s)


def poly_to_list(p: Poly) -> list[str]:
    return [format_scalar(c) for c in p.coeffs]


def expsum_to_terms(f: ExpSum) -> list[dict[str, Any]]:
    return [{"freq": format_scalar(freq), "zpoly": poly_to_list(p)} for freq, p in f]
