"""Shared fixtures-by-import: corpus loading and seeded random instances."""

from __future__ import annotations

import random
from fractions import Fraction

from expsum_ode.algebra import ExpSum, Poly, Scalar
from expsum_ode.corpus import path as corpus_path
from expsum_ode.documents import parse_problem, parse_solutions, read_json
from expsum_ode.normalize import RawProblem


def load_problem(name: str) -> RawProblem:
    return parse_problem(read_json(corpus_path(name)))


def load_solutions(name: str) -> list[ExpSum]:
    return parse_solutions(read_json(corpus_path(name)))


def es(*terms) -> ExpSum:
    """es((freq, coef), ...) with constant coefficients; es((freq, [c0, c1]), ...) for z-polynomials."""
    out = []
    for f, c in terms:
        poly = Poly(list(c), "z") if isinstance(c, (list, tuple)) else Poly.constant(c, "z")
        out.append((Scalar.coerce(f), poly))
    return ExpSum(out, exact=True)


def raw_from_polys(P: list[Poly]) -> RawProblem:
    """f^(n) + Σ P_j(e^z)·f^(j) = 0 from P_0..P_{n-1}."""
    coeffs = []
    for p in P:
        coeffs.append(ExpSum([(Scalar(k), Poly.constant(c, "z")) for k, c in enumerate(p.coeffs)], exact=True))
    return RawProblem(len(P), tuple(coeffs))


def _rand_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_polys(rng: random.Random) -> list[Poly]:
    """P_0..P_{n-1}, n <= 4, deg <= 3, entries p/q with |p|, q <= 9, P_0 nonconstant."""
    n = rng.randint(1, 4)
    P = []
    for j in range(n):
        deg = rng.randint(0, 3)
        P.append(Poly([_rand_rational(rng) for _ in range(deg + 1)], "t"))
    while P[0].degree < 1:
        P[0] = Poly([_rand_rational(rng) for _ in range(rng.randint(2, 4))], "t")
    return P


def planted_polys(rng: random.Random) -> list[Poly]:
    """Random P_1..P_{n-1} with P_0 chosen so that exp(λz) solves, λ a small nonzero integer."""
    n = rng.randint(2, 4)
    lam = rng.choice([-2, -1, 1, 2])
    P = [None] + [Poly([_rand_rational(rng) for _ in range(rng.randint(1, 4))], "t") for _ in range(1, n)]
    acc = Poly.constant(-(lam ** n), "t")
    for j in range(1, n):
        acc = acc - P[j] * lam ** j
    P[0] = acc
    return P


def random_instances(count: int = 20, seed: int = 20240611, *, planted: bool = True) -> list[list[Poly]]:
    """Alternately unconstrained and planted (if ``planted``); all have A_0 nonzero.

    Planted P_0 is derived, so its entries may exceed the |p|, q <= 9 range.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        P = planted_polys(rng) if planted and len(out) % 2 else random_polys(rng)
        if not P[0].is_zero() and any(p.degree >= 1 for p in P):
            out.append(P)
    return out
