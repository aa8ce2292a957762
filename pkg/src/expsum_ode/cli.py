"""Command line interface.

    expsum-ode solve PROBLEM [--json PATH]
    expsum-ode verify PROBLEM SOLUTION
    expsum-ode indicial PROBLEM
    expsum-ode transform PROBLEM [--lambda VALUE]

Exit codes: 0 ok, 1 verification failure, 2 parse or validation error,
3 unsupported problem, 4 numeric failure, 5 degree cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any

from . import __version__
from .algebra import format_scalar, parse_scalar
from .documents import expsum_to_terms, has_decimal, parse_problem, parse_solutions, poly_to_list, read_json
from .errors import (
    CapExceeded,
    ExpSumODEError,
    InternalInconsistency,
    ModeError,
    MergeAmbiguityError,
    NormalizationError,
    NumericFailure,
    ParseError,
    UnsupportedProblem,
)
from .normalize import NormalizedProblem, RawProblem, to_npde
from .roots import CLASS_TOL, CLUSTER_TOL, SNAP_DENOMINATOR_BOUND, find_roots, group_into_classes
from .solver import DEFAULT_CAP, SolutionBasis, class_index, solve_all
from .transform import indicial_polynomial, shift_by_lambda, to_t_domain
from .verify import DEFAULT_TOL, check_solution, independence

log = logging.getLogger("expsum_ode")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_NUMERIC = 4
EXIT_CAP = 5

_EXIT_FOR = [
    (CapExceeded, EXIT_CAP),
    (NumericFailure, EXIT_NUMERIC),
    (UnsupportedProblem, EXIT_UNSUPPORTED),
    (InternalInconsistency, EXIT_VERIFY),
    ((ParseError, NormalizationError, ModeError, MergeAmbiguityError), EXIT_PARSE),
]


def exit_code_for(exc: BaseException) -> int:
    for kinds, code in _EXIT_FOR:
        if isinstance(exc, kinds):
            return code
    return EXIT_PARSE


# -- pipeline helpers ---------------------------------------------------------

def _mode(args, doc) -> str:
    if args.mode:
        return args.mode
    return "numeric" if has_decimal(doc) else "exact"


def _load(args) -> tuple[dict, RawProblem, str]:
    doc = read_json(args.problem)
    raw = parse_problem(doc)
    return doc, raw, _mode(args, doc)


def _normalize(raw: RawProblem, mode: str) -> NormalizedProblem:
    np_ = to_npde(raw)
    for w in np_.warnings:
        log.warning("%s", w)
    return np_.to_approx() if mode == "numeric" else np_


def _roots_json(roots, classes) -> list[dict]:
    out = []
    for r in roots:
        cid = class_index(r, classes)
        out.append({
            "value": format_scalar(r.value),
            "multiplicity": r.multiplicity,
            "exact": r.exact,
            "class": cid,
        })
    return out


def _classes_json(classes) -> list[dict]:
    return [{
        "base": format_scalar(c.base),
        "offsets": list(c.offsets),
        "multiplicities": list(c.multiplicities),
        "warnings": list(c.warnings),
    } for c in classes]


def _normalization_json(np_: NormalizedProblem) -> dict:
    return {
        "lambda_prime": str(np_.lambda_prime),
        "flipped": np_.flipped,
        "shift": np_.shift,
        "gamma": np_.gamma,
        "leading_scale": format_scalar(np_.leading_scale),
        "P": [poly_to_list(p) for p in np_.P],
        "warnings": list(np_.warnings),
    }


def solution_document(b: SolutionBasis, mode: str) -> dict:
    np_ = b.problem
    return {
        "basis": [expsum_to_terms(f) for f in b.original],
        "metadata": {
            "mode": mode,
            "indicial_polynomial": {"text": b.indicial.pretty(), "coefficients": poly_to_list(b.indicial)},
            "roots": _roots_json(b.roots, b.classes),
            "classes": _classes_json(b.classes),
            "class_base_rule": "member with smallest real part, then smallest imaginary part",
            "normalization": _normalization_json(np_),
            "pure_exponential": [format_scalar(s) for s in b.pure_exponents],
            "per_root": [{
                "root": format_scalar(r.root.value),
                "class": r.class_id,
                "degree_candidates": list(r.degree_candidates),
                "polynomial_solutions": r.poly_solution_count,
            } for r in b.root_reports],
            "verification": [{
                "solution": i,
                "verified": v.ok,
                "residual": expsum_to_terms(v.residual),
                "max_magnitude": v.certificate.max_magnitude,
                "threshold": v.certificate.threshold,
            } for i, v in enumerate(b.verification)],
            "independence_rank": b.rank,
            "dimension": b.dimension,
            "count_bound": b.count_bound,
            "notes": list(b.notes),
        },
    }


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        blob = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
        if args.json == "-":
            sys.stdout.write(blob)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(blob)
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def cmd_solve(args) -> int:
    doc, raw, mode = _load(args)
    np_ = _normalize(raw, mode)
    b = solve_all(
        np_,
        args.max_degree,
        tol=args.tol,
        cluster_tol=args.cluster_tol,
        class_tol=args.class_tol,
        snap_bound=args.snap_denominator_bound,
    )
    lines = [
        f"indicial polynomial: {b.indicial.pretty()}",
        "roots: " + ", ".join(f"{r.value} (x{r.multiplicity})" for r in b.roots),
        f"normalization: lambda'={np_.lambda_prime} flipped={np_.flipped} M={np_.shift} gamma={np_.gamma}",
    ]
    if b.original:
        lines.append(f"basis ({b.dimension}, rank {b.rank}):")
        lines += [f"  f{i + 1} = {f.pretty()}" for i, f in enumerate(b.original)]
    else:
        lines.append("no finite-order solutions")
    lines += [f"  note: {n}" for n in b.notes]
    _emit(args, solution_document(b, mode), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    doc, raw, mode = _load(args)
    sol_doc = read_json(args.solution)
    candidates = parse_solutions(sol_doc)
    if mode == "numeric" or has_decimal(sol_doc):
        mode = "numeric"
    gamma = None
    try:
        gamma = to_npde(raw).gamma
    except (UnsupportedProblem, NormalizationError) as exc:
        log.info("verify-only: %s", exc)
    verify_only = gamma is None or gamma > 0
    target = raw.to_approx() if mode == "numeric" else raw
    results, lines, all_ok = [], [], True
    for i, f in enumerate(candidates):
        f = f.to_approx() if mode == "numeric" else f
        r, cert = check_solution(f, target, args.tol)
        all_ok &= cert.is_zero
        entry: dict[str, Any] = {
            "candidate": i,
            "verified": cert.is_zero,
            "residual": expsum_to_terms(r),
            "max_magnitude": cert.max_magnitude,
            "threshold": cert.threshold,
        }
        if not cert.is_zero:
            entry["worst"] = {
                "freq": format_scalar(cert.worst_frequency),
                "z_power": cert.worst_power,
                "coef": format_scalar(cert.worst_coefficient),
            }
        results.append(entry)
        status = "ok" if cert.is_zero else f"FAIL residual {r.pretty()}"
        lines.append(f"candidate {i + 1}: {f.pretty()}: {status}")
    rank = independence(candidates, args.tol).rank if candidates else 0
    lines.append(f"independence rank: {rank}")
    if verify_only:
        lines.append("verify-only mode (no constructive solve for this problem)")
    payload = {"mode": mode, "verify_only": verify_only, "all_verified": all_ok,
               "independence_rank": rank, "candidates": results}
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_VERIFY


def cmd_indicial(args) -> int:
    doc, raw, mode = _load(args)
    np_ = _normalize(raw, mode)
    q = indicial_polynomial(np_)
    roots = find_roots(q, cluster_tol=args.cluster_tol, snap_bound=args.snap_denominator_bound)
    classes = group_into_classes(roots, args.class_tol)
    payload = {
        "indicial_polynomial": {"text": q.pretty(), "coefficients": poly_to_list(q)},
        "roots": _roots_json(roots, classes),
        "classes": _classes_json(classes),
        "normalization": _normalization_json(np_),
    }
    lines = [q.pretty()]
    lines += [f"  root {r.value} (x{r.multiplicity})" for r in roots]
    lines += [f"  class base {c.base} offsets {list(c.offsets)}" for c in classes]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def _polys_text(name: str, polys) -> list[str]:
    return [f"  {name}_{i} = {p.pretty()}" for i, p in enumerate(polys)]


def cmd_transform(args) -> int:
    doc, raw, mode = _load(args)
    np_ = _normalize(raw, mode)
    ode = to_t_domain(np_)
    vcoeffs, vpow = ode.derivative_coefficients()
    payload: dict[str, Any] = {
        "alpha": [poly_to_list(a) for a in ode.alpha],
        "v_equation": {"coefficients": [poly_to_list(p) for p in vcoeffs], "removed_t_power": vpow},
    }
    lines = ["t-domain: sum_i alpha_i(t) t^i v^(i) = 0"] + _polys_text("alpha", ode.alpha)
    lines.append(f"v-equation coefficients (common t^{vpow} removed):")
    lines += _polys_text("c", vcoeffs)
    if args.lam is not None:
        lam = parse_scalar(args.lam, approx=not np_.exact)
        u = shift_by_lambda(ode, lam)
        ucoeffs, upow = u.derivative_coefficients()
        payload["u_equation"] = {
            "lambda": format_scalar(u.lam),
            "beta": [poly_to_list(b) for b in u.beta],
            "coefficients": [poly_to_list(p) for p in ucoeffs],
            "removed_t_power": upow,
        }
        lines.append(f"u-equation at lambda = {u.lam} (common t^{upow} removed):")
        lines += _polys_text("c", ucoeffs)
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("problem", help="problem document (JSON)")
    p.add_argument("--mode", choices=("exact", "numeric"), default=None,
                   help="scalar mode (default: exact unless a decimal literal appears)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="residual tolerance in numeric mode")
    p.add_argument("--max-degree", type=int, default=DEFAULT_CAP, help="cap on polynomial degree candidates")
    p.add_argument("--snap-denominator-bound", type=int, default=SNAP_DENOMINATOR_BOUND)
    p.add_argument("--cluster-tol", type=float, default=CLUSTER_TOL)
    p.add_argument("--class-tol", type=float, default=CLASS_TOL)
    p.add_argument("--json", metavar="PATH", default=None, help="write the JSON report to PATH ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expsum-ode", description="Exponential-sum solutions of linear ODEs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="construct the basis of finite-order solutions")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check candidate solutions by substitution")
    _common(p)
    p.add_argument("solution", help="solution document or term list (JSON)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("indicial", help="indicial polynomial, roots and classes")
    _common(p)
    p.set_defaults(func=cmd_indicial)

    p = sub.add_parser("transform", help="t = e^z equation, optionally the u-equation at a root")
    _common(p)
    p.add_argument("--lambda", dest="lam", default=None, help="shift v = t^lambda u")
    p.set_defaults(func=cmd_transform)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ExpSumODEError as exc:
        code = exit_code_for(exc)
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
