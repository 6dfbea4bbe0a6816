"""Problem configuration: a JSON key-value tree, fully validated on load.

Schema (sections beyond "signature" are optional; commands that need a
missing section report an input error):

    {
      "signature": {"n": 2, "alpha": ["1", "1"], "gamma": {"12": "0"}},
      "dirac":     {"lambda": ["1", "1", "1"]},
      "evolution": {"real_valued": false, "coefficients": ["e12", "0", "0"]},
      "initial":   "x1 - e1*x0",
      "options":   {"degree": 2, "nt": null, "max_iter": 25,
                    "ansatz_degree": 1, "homogeneous": true,
                    "ansatz_real": false, "seed": 0}
    }

Rationals are strings ("p/q" or "p"); gamma keys are two strictly
increasing generator digits.  All validation failures are collected
and reported together with their paths into the document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from cliffta.algebra import AlgebraError, Signature
from cliffta.exprparse import ParseError, parse_expr
from cliffta.operators import DiracOperator, EvolutionOperator, OperatorError
from cliffta.polyfield import PolyField


class ConfigError(Exception):
    """One or more validation failures; `problems` lists them with paths."""

    def __init__(self, problems: List[str]):
        super().__init__("invalid configuration:\n  " + "\n  ".join(problems))
        self.problems = problems


@dataclass
class SolverOptions:
    degree: int = 2
    nt: Optional[int] = None
    max_iter: int = 25
    ansatz_degree: int = 1
    homogeneous: bool = True
    ansatz_real: bool = False
    seed: int = 0


@dataclass
class ProblemConfig:
    signature: Signature
    dirac: Optional[DiracOperator]
    evolution: Optional[EvolutionOperator]
    evolution_real_declared: bool
    initial: Optional[PolyField]
    options: SolverOptions


def _parse_fraction(value, path: str, problems: List[str]) -> Optional[Fraction]:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        problems.append(f"{path}: expected a rational string, got {value!r}")
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        problems.append(f"{path}: not a valid rational: {value!r}")
        return None


def _load_signature(doc, problems: List[str]) -> Optional[Signature]:
    block = doc.get("signature")
    if not isinstance(block, dict):
        problems.append("signature: missing or not an object")
        return None
    n = block.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        problems.append("signature.n: missing or not an integer")
        return None
    alpha_raw = block.get("alpha")
    if not isinstance(alpha_raw, list):
        problems.append("signature.alpha: missing or not a list")
        return None
    if len(alpha_raw) != n:
        problems.append(
            f"signature.alpha: expected {n} entries, got {len(alpha_raw)}"
        )
        return None
    alpha = []
    for idx, raw in enumerate(alpha_raw):
        v = _parse_fraction(raw, f"signature.alpha[{idx}]", problems)
        if v is None:
            return None
        alpha.append(v)
    gamma = {}
    gamma_raw = block.get("gamma", {})
    if not isinstance(gamma_raw, dict):
        problems.append("signature.gamma: not an object")
        return None
    for key, raw in sorted(gamma_raw.items()):
        path = f"signature.gamma.{key}"
        if not (isinstance(key, str) and len(key) == 2 and key.isdigit()):
            problems.append(f"{path}: key must be two generator digits")
            continue
        i, j = int(key[0]), int(key[1])
        if i == j:
            problems.append(f"{path}: diagonal gamma entries are not allowed")
            continue
        if not (1 <= i <= n and 1 <= j <= n):
            problems.append(f"{path}: generator index out of range for n={n}")
            continue
        if i > j:
            problems.append(f"{path}: key digits must strictly increase")
            continue
        v = _parse_fraction(raw, path, problems)
        if v is not None:
            gamma[(i, j)] = v
    if problems:
        return None
    try:
        return Signature.create(n, alpha, gamma)
    except AlgebraError as exc:
        problems.append(f"signature: {exc}")
        return None


def _parse_field(text, sig: Signature, path: str, problems: List[str]):
    if not isinstance(text, str):
        problems.append(f"{path}: expected an expression string, got {text!r}")
        return None
    try:
        return parse_expr(text, sig)
    except ParseError as exc:
        problems.append(f"{path}: {exc}")
        return None


def _load_dirac(doc, sig, problems: List[str]) -> Optional[DiracOperator]:
    block = doc.get("dirac")
    if block is None:
        return None
    if not isinstance(block, dict) or not isinstance(block.get("lambda"), list):
        problems.append("dirac.lambda: missing or not a list")
        return None
    raw = block["lambda"]
    if len(raw) != sig.n + 1:
        problems.append(
            f"dirac.lambda: expected {sig.n + 1} entries, got {len(raw)}"
        )
        return None
    lambdas = []
    for idx, text in enumerate(raw):
        pf = _parse_field(text, sig, f"dirac.lambda[{idx}]", problems)
        if pf is None:
            return None
        if not pf.is_real_valued:
            problems.append(f"dirac.lambda[{idx}]: must be real-valued")
            return None
        lambdas.append(pf)
    try:
        return DiracOperator(sig, tuple(lambdas))
    except OperatorError as exc:
        problems.append(f"dirac: {exc}")
        return None


def _load_evolution(doc, sig, problems: List[str]):
    block = doc.get("evolution")
    if block is None:
        return None, False
    if not isinstance(block, dict) or not isinstance(block.get("coefficients"), list):
        problems.append("evolution.coefficients: missing or not a list")
        return None, False
    raw = block["coefficients"]
    real_declared = bool(block.get("real_valued", False))
    if len(raw) != sig.n + 1:
        problems.append(
            f"evolution.coefficients: expected {sig.n + 1} entries, got {len(raw)}"
        )
        return None, real_declared
    coeffs = []
    for idx, text in enumerate(raw):
        pf = _parse_field(text, sig, f"evolution.coefficients[{idx}]", problems)
        if pf is None:
            return None, real_declared
        if real_declared and not pf.is_real_valued:
            problems.append(
                f"evolution.coefficients[{idx}]: declared real_valued but is not"
            )
            return None, real_declared
        coeffs.append(pf)
    try:
        return EvolutionOperator(sig, tuple(coeffs)), real_declared
    except OperatorError as exc:
        problems.append(f"evolution: {exc}")
        return None, real_declared


def _load_options(doc, problems: List[str]) -> SolverOptions:
    block = doc.get("options", {})
    if not isinstance(block, dict):
        problems.append("options: not an object")
        return SolverOptions()
    opts = SolverOptions()
    int_keys = {
        "degree": (0, None), "nt": (1, None), "max_iter": (1, None),
        "ansatz_degree": (0, 2), "seed": (0, None),
    }
    for key, (lo, hi) in int_keys.items():
        if key in block and block[key] is not None:
            v = block[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < lo or (hi is not None and v > hi):
                bound = f">= {lo}" if hi is None else f"in {lo}..{hi}"
                problems.append(f"options.{key}: expected an integer {bound}, got {v!r}")
            else:
                setattr(opts, key, v)
    for key in ("homogeneous", "ansatz_real"):
        if key in block:
            if not isinstance(block[key], bool):
                problems.append(f"options.{key}: expected a boolean")
            else:
                setattr(opts, key, block[key])
    known = set(int_keys) | {"homogeneous", "ansatz_real"}
    for key in sorted(set(block) - known):
        problems.append(f"options.{key}: unknown option")
    return opts


def load_config(path: str) -> ProblemConfig:
    """Load and fully validate a configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError([f"cannot read {path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}: not valid JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise ConfigError([f"{path}: top level must be an object"])

    problems: List[str] = []
    for key in sorted(set(doc) - {"signature", "dirac", "evolution", "initial", "options"}):
        problems.append(f"{key}: unknown section")
    sig = _load_signature(doc, problems)
    if sig is None:
        raise ConfigError(problems or ["signature: invalid"])
    dirac = _load_dirac(doc, sig, problems)
    evolution, real_declared = _load_evolution(doc, sig, problems)
    initial = None
    if "initial" in doc:
        initial = _parse_field(doc["initial"], sig, "initial", problems)
    options = _load_options(doc, problems)
    if problems:
        raise ConfigError(problems)
    return ProblemConfig(
        signature=sig,
        dirac=dirac,
        evolution=evolution,
        evolution_real_declared=real_declared,
        initial=initial,
        options=options,
    )
