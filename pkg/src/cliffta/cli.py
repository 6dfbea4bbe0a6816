"""Command-line entry point.

    cliffta <subcommand> --config <file> [--out <file>] [--degree d]
            [--nt N] [--max-iter M] [--case I|II|A]

Subcommands: table, monogenic, basis, check, oracle, enumerate,
elliptic, solve.  Each prints a human-readable summary and, with
--out, writes a machine-readable JSON report whose keys are emitted in
a fixed order, with rationals as "p/q" strings, monomials as exponent
lists, and blades as digit strings, so identical inputs produce
byte-identical output.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from cliffta import __version__
from cliffta.algebra import AlgebraError, Multivector, blade_name, blade_mul
from cliffta.config import ConfigError, ProblemConfig, load_config
from cliffta.exprparse import format_multivector, format_polyfield
from cliffta.ivp import monogenicity_trace, solve_ivp, time_residual
from cliffta.operators import OperatorError, apply_dirac, ellipticity_check
from cliffta.polyfield import PolyField
from cliffta.ratlinalg import RatMatrix
from cliffta.associated import (
    Ansatz,
    check_case1,
    check_case2,
    check_caseA,
    empirical_associated,
    enumerate_admissible,
    monogenic_basis,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    """Invalid input for the requested command (exit code 2)."""


# ---------------------------------------------------------------------------
# Serialization (fixed key order, exact rationals as strings)
# ---------------------------------------------------------------------------

def _ser_fraction(value) -> str:
    return str(value)


def _ser_blade(mask: int) -> str:
    return blade_name(mask)[1:]


def _ser_multivector(mv: Multivector) -> list:
    return [
        {"blade": _ser_blade(mask), "coeff": _ser_fraction(c)}
        for mask, c in mv.items()
    ]


def _ser_polyfield(u: PolyField) -> dict:
    terms = []
    for mono, mv in u.items():
        for mask, c in mv.items():
            terms.append(
                {
                    "monomial": list(mono),
                    "blade": _ser_blade(mask),
                    "coeff": _ser_fraction(c),
                }
            )
    return {"expr": format_polyfield(u), "terms": terms}


def _ser_matrix(m: RatMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[_ser_fraction(v) for v in row] for row in m.entries],
    }


def _ser_signature(sig) -> dict:
    return {
        "n": sig.n,
        "alpha": [_ser_fraction(a) for a in sig.alpha],
        "gamma": {
            f"{i}{j}": _ser_fraction(sig.gamma_at(i, j))
            for i in range(1, sig.n + 1)
            for j in range(i + 1, sig.n + 1)
            if sig.gamma_at(i, j) != 0
        },
    }


def _ser_report_entries(report) -> list:
    return [
        {
            "label": e.label,
            "passed": e.passed,
            "residual": _ser_polyfield(e.residual),
        }
        for e in report.entries
    ]


def _ser_evolution(f) -> dict:
    return {
        "real_valued": f.real_valued,
        "coefficients": [_ser_polyfield(a) for a in f.coeffs],
    }


# ---------------------------------------------------------------------------
# Command implementations: each returns (exit_code, report dict)
# ---------------------------------------------------------------------------

def _need(cfg: ProblemConfig, attr: str, section: str):
    value = getattr(cfg, attr)
    if value is None:
        raise InputError(f"config section {section!r} is required for this command")
    return value


def cmd_table(cfg: ProblemConfig, args) -> tuple:
    sig = cfg.signature
    products = []
    for a in range(sig.dim):
        for b in range(sig.dim):
            products.append(
                {
                    "a": _ser_blade(a),
                    "b": _ser_blade(b),
                    "result": _ser_multivector(blade_mul(sig, a, b)),
                }
            )
    report = {
        "command": "table",
        "signature": _ser_signature(sig),
        "products": products,
    }
    print(f"multiplication table for n={sig.n} ({sig.dim} blades)")
    for a in range(sig.dim):
        row = []
        for b in range(sig.dim):
            row.append(format_multivector(blade_mul(sig, a, b)))
        print(f"  e{_ser_blade(a)} * (.) : " + " | ".join(row))
    return EXIT_OK, report


def cmd_monogenic(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    phi = _need(cfg, "initial", "initial")
    residual = apply_dirac(d, phi)
    passed = residual.is_zero
    report = {
        "command": "monogenic",
        "signature": _ser_signature(cfg.signature),
        "initial": _ser_polyfield(phi),
        "residual": _ser_polyfield(residual),
        "passed": passed,
    }
    print(f"D(initial) = {format_polyfield(residual)}")
    print("monogenic: " + ("yes" if passed else "no"))
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), report


def cmd_basis(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    degree = args.degree if args.degree is not None else cfg.options.degree
    basis = monogenic_basis(d, degree)
    report = {
        "command": "basis",
        "signature": _ser_signature(cfg.signature),
        "degree": degree,
        "dimension": len(basis),
        "basis": [_ser_polyfield(u) for u in basis],
    }
    print(f"monogenic polynomial basis, degree <= {degree}: dimension {len(basis)}")
    for u in basis:
        print("  " + format_polyfield(u))
    return EXIT_OK, report


def _pick_case(cfg: ProblemConfig, args) -> str:
    if args.case:
        return args.case
    f = cfg.evolution
    if f is not None and not f.real_valued:
        return "II"
    return "I"


def cmd_check(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    f = _need(cfg, "evolution", "evolution")
    case = _pick_case(cfg, args)
    checker = {"I": check_case1, "II": check_case2, "A": check_caseA}[case]
    try:
        report_obj = checker(d, f)
    except OperatorError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "check",
        "case": report_obj.case,
        "signature": _ser_signature(cfg.signature),
        "passed": report_obj.passed,
        "conditions": _ser_report_entries(report_obj),
    }
    print(f"case {report_obj.case} conditions: "
          + ("all satisfied" if report_obj.passed else "VIOLATED"))
    for e in report_obj.entries:
        status = "ok " if e.passed else "FAIL"
        print(f"  [{status}] {e.label}: residual = {format_polyfield(e.residual)}")
    return (EXIT_OK if report_obj.passed else EXIT_CHECK_FAILED), report


def cmd_oracle(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    f = _need(cfg, "evolution", "evolution")
    degree = args.degree if args.degree is not None else cfg.options.degree
    result = empirical_associated(d, f, degree)
    report = {
        "command": "oracle",
        "signature": _ser_signature(cfg.signature),
        "degree": degree,
        "basis_size": result.basis_size,
        "passed": result.passed,
        "counterexample": (
            None if result.counterexample is None else _ser_polyfield(result.counterexample)
        ),
        "residual": None if result.residual is None else _ser_polyfield(result.residual),
    }
    print(f"empirical check over {result.basis_size} monogenic basis elements "
          f"(degree <= {degree}): " + ("pass" if result.passed else "FAIL"))
    if not result.passed:
        print("  witness u = " + format_polyfield(result.counterexample))
        print("  D(F u)    = " + format_polyfield(result.residual))
    return (EXIT_OK if result.passed else EXIT_CHECK_FAILED), report


def cmd_enumerate(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    opts = cfg.options
    ansatz = Ansatz(
        degree=opts.ansatz_degree,
        homogeneous=opts.homogeneous,
        real_valued=opts.ansatz_real,
    )
    try:
        basis = enumerate_admissible(d, ansatz)
    except OperatorError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "enumerate",
        "signature": _ser_signature(cfg.signature),
        "ansatz": {
            "degree": ansatz.degree,
            "homogeneous": ansatz.homogeneous,
            "real_valued": ansatz.real_valued,
        },
        "dimension": basis.dimension,
        "condition_matrix": _ser_matrix(basis.condition_matrix),
        "operators": [_ser_evolution(f) for f in basis.operators],
    }
    kind = "real-valued" if ansatz.real_valued else "algebra-valued"
    shape = "homogeneous" if ansatz.homogeneous else "affine"
    print(f"admissible operators ({kind}, {shape} degree {ansatz.degree}): "
          f"dimension {basis.dimension}")
    print(f"condition matrix: {basis.condition_matrix.rows} x "
          f"{basis.condition_matrix.cols}")
    return EXIT_OK, report


def cmd_elliptic(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    try:
        verdict = ellipticity_check(d)
    except OperatorError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "elliptic",
        "signature": _ser_signature(cfg.signature),
        "symbol": _ser_matrix(verdict.symbol),
        "definite": verdict.definite,
        "all_alpha_positive": verdict.c1_satisfied,
        "gamma_zero_and_alpha_positive": verdict.c2_applicable_and_satisfied,
    }
    print("second-order symbol definite: " + ("yes" if verdict.definite else "no"))
    print(f"  all alpha_j > 0: {verdict.c1_satisfied}")
    print(f"  gamma = 0 and all alpha_j > 0: {verdict.c2_applicable_and_satisfied}")
    return (EXIT_OK if verdict.definite else EXIT_CHECK_FAILED), report


def cmd_solve(cfg: ProblemConfig, args) -> tuple:
    d = _need(cfg, "dirac", "dirac")
    f = _need(cfg, "evolution", "evolution")
    phi = _need(cfg, "initial", "initial")
    nt = args.nt if args.nt is not None else cfg.options.nt
    max_iter = args.max_iter if args.max_iter is not None else cfg.options.max_iter
    series, diag = solve_ivp(f, phi, nt=nt, max_iter=max_iter, dirac=d)
    residual = time_residual(f, series)
    trace = monogenicity_trace(d, series)
    report = {
        "command": "solve",
        "signature": _ser_signature(cfg.signature),
        "initial": _ser_polyfield(phi),
        "truncation": series.truncation,
        "iterations": diag.iterations,
        "converged": diag.converged,
        "solution": [_ser_polyfield(c) for c in series.coeffs],
        "time_residual": [_ser_polyfield(c) for c in residual.coeffs],
        "monogenic_trace_passed": trace.passed,
        "monogenic_trace": [_ser_polyfield(r) for r in trace.residuals],
    }
    print(f"Picard iteration: {'converged' if diag.converged else 'NOT converged'} "
          f"at iteration {diag.iterations} (truncation t^{series.truncation})")
    for k, c in enumerate(series.coeffs):
        print(f"  t^{k}: {format_polyfield(c)}")
    print("time residual zero: " + ("yes" if residual.is_zero else "no"))
    print("monogenicity trace: " + ("pass" if trace.passed else "FAIL"))
    ok = trace.passed and (not diag.converged or residual.is_zero)
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), report


COMMANDS = {
    "table": cmd_table,
    "monogenic": cmd_monogenic,
    "basis": cmd_basis,
    "check": cmd_check,
    "oracle": cmd_oracle,
    "enumerate": cmd_enumerate,
    "elliptic": cmd_elliptic,
    "solve": cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffta",
        description="Exact computation in Clifford-type algebras: monogenic "
                    "functions, associated operator pairs, and initial value problems.",
    )
    parser.add_argument("--version", action="version", version=f"cliffta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("table", "print the full blade multiplication table"),
        ("monogenic", "apply D to the initial function and report the residual"),
        ("basis", "exact basis of polynomial monogenic functions"),
        ("check", "symbolic associated-pair condition report"),
        ("oracle", "empirical associated-pair check over a monogenic basis"),
        ("enumerate", "enumerate admissible evolution operators"),
        ("elliptic", "definiteness verdict for the second-order symbol"),
        ("solve", "solve u_t = F u, u(0) = initial, by Picard iteration"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="problem configuration file")
        p.add_argument("--out", help="write a machine-readable JSON report here")
        p.add_argument("--degree", type=int, help="basis/oracle degree bound")
        p.add_argument("--nt", type=int, help="time truncation order")
        p.add_argument("--max-iter", type=int, dest="max_iter",
                       help="Picard iteration budget")
        if name == "check":
            p.add_argument("--case", choices=["I", "II", "A"],
                           help="condition system to check (default: by coefficient kind)")
        else:
            p.set_defaults(case=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        exit_code, report = COMMANDS[args.command](cfg, args)
    except (ConfigError, InputError, AlgebraError, OperatorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
