"""Associated-pair machinery: symbolic condition checkers, a brute-force
monogenic-basis oracle, and exact enumeration of admissible operators.

A pair (F, D) is associated when F maps the kernel of D into itself:
D u = 0 implies D(F u) = 0.  Three sufficient condition systems are
checked symbolically:

  case I  - real-valued A^(i), any n
  case II - algebra-valued A^(i), n = 2
  case A  - real-valued A^(i) = A^(i)(x_i) given, conditions on the
            lambda_j of D

Every condition involving beta_i = lambda_i/lambda_0 is multiplied
through by the minimal power of lambda_0 that clears denominators, so
all residuals are exact polynomials.  The independent oracle
(`empirical_associated`) tests D(F u) = 0 directly on an exact basis
of polynomial monogenic functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from cliffta.algebra import Multivector, Signature, blade_name
from cliffta.polyfield import PolyField, grlex_key, monomials_of_degree, monomials_up_to
from cliffta.operators import (
    DiracOperator,
    EvolutionOperator,
    OperatorError,
    apply_dirac,
    apply_evolution,
)
from cliffta.ratlinalg import RatMatrix, nullspace, rank


class WrongCase(OperatorError):
    """The operator pair does not fit the requested condition system."""


class DegenerateOperator(OperatorError):
    """lambda_0 is identically zero, so beta_i is undefined."""


class PreconditionViolated(OperatorError):
    """A structural precondition of a checker fails (reported, not ignored)."""


class UnsupportedCase(OperatorError):
    """Requested combination is outside the implemented scope."""


@dataclass(frozen=True)
class ConditionEntry:
    label: str
    residual: PolyField
    passed: bool


@dataclass(frozen=True)
class ConditionReport:
    case: str  # "I" | "II" | "A"
    entries: tuple

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failing(self) -> list:
        return [e for e in self.entries if not e.passed]


def _require_lambda0(d: DiracOperator) -> None:
    if d.lam(0).is_zero:
        raise DegenerateOperator("lambda_0 is identically zero")


def _cleared_beta_derivative(d: DiracOperator, j: int, i: int) -> PolyField:
    """lambda_0^2 * d_j(beta_i) = lambda_0 d_j(lambda_i) - lambda_i d_j(lambda_0)."""
    return d.lam(0) * d.lam(i).partial(j) - d.lam(i) * d.lam(0).partial(j)


def _entry(label: str, residual: PolyField) -> ConditionEntry:
    return ConditionEntry(label=label, residual=residual, passed=residual.is_zero)


def _first_order_residual(d: DiracOperator, f: EvolutionOperator, i: int) -> PolyField:
    """lambda_0-cleared coefficient condition for d_i u, shared by cases I/II.

    lambda_0 * [ D A^(i) - (D A^(0)) beta_i e_i
                 - sum_j A^(j) lambda_0 d_j(beta_i) e_i ].
    """
    sig = d.sig
    ei = PolyField.blade(sig, 1 << (i - 1))
    residual = d.lam(0) * apply_dirac(d, f.coeff(i))
    residual = residual - d.lam(i) * (apply_dirac(d, f.coeff(0)) * ei)
    for j in range(sig.n + 1):
        db = _cleared_beta_derivative(d, j, i)
        residual = residual - (f.coeff(j) * db) * ei
    return residual


def check_case1(d: DiracOperator, f: EvolutionOperator) -> ConditionReport:
    """Sufficient conditions for real-valued A^(i): one residual per axis."""
    if not f.real_valued:
        raise WrongCase("case I requires real-valued evolution coefficients")
    _require_lambda0(d)
    entries = [
        _entry(f"caseI[i={i}]", _first_order_residual(d, f, i))
        for i in range(1, d.sig.n + 1)
    ]
    return ConditionReport(case="I", entries=tuple(entries))


def check_case2(d: DiracOperator, f: EvolutionOperator) -> ConditionReport:
    """Sufficient conditions for algebra-valued A^(i), n = 2.

    Eight first-order scalar residuals (two axis conditions split into
    the four blade components) plus five lambda_0-cleared component
    identities tying the e_1/e_2/e_12 parts of the A^(i) together.
    """
    sig = d.sig
    if sig.n != 2:
        raise UnsupportedCase("case II is implemented for n = 2 only")
    _require_lambda0(d)
    entries: List[ConditionEntry] = []
    for i in (1, 2):
        residual = _first_order_residual(d, f, i)
        for mask in range(sig.dim):
            entries.append(
                _entry(
                    f"caseII.first[i={i},comp={blade_name(mask)}]",
                    residual.component(mask),
                )
            )

    lam0, lam1, lam2 = d.lam(0), d.lam(1), d.lam(2)
    a0, a1, a2 = f.coeff(0), f.coeff(1), f.coeff(2)
    alpha1, alpha2 = sig.alpha_at(1), sig.alpha_at(2)
    gamma = sig.gamma_at(1, 2)
    e1, e2, e12 = 1, 2, 3

    # Orientation: dependent component minus its determining expression,
    # cleared by lambda_0 (lambda_0^2 for the coupled identity).
    component_entries = [
        ("caseII.second[A1_2 = a1*b1*A0_12]",
         lam0 * a1.component(e2) - alpha1 * (lam1 * a0.component(e12))),
        ("caseII.second[A1_12 = -b1*A0_2]",
         lam0 * a1.component(e12) + lam1 * a0.component(e2)),
        ("caseII.second[A2_1 = -a2*b2*A0_12]",
         lam0 * a2.component(e1) + alpha2 * (lam2 * a0.component(e12))),
        ("caseII.second[A2_12 = b2*A0_1]",
         lam0 * a2.component(e12) - lam2 * a0.component(e1)),
        ("caseII.second[b2*A1_1 - b1*A2_2 = 2*b1*b2*g*A0_12]",
         lam0 * (lam2 * a1.component(e1)) - lam0 * (lam1 * a2.component(e2))
         - 2 * gamma * (lam1 * (lam2 * a0.component(e12)))),
    ]
    entries.extend(_entry(label, residual) for label, residual in component_entries)
    return ConditionReport(case="II", entries=tuple(entries))


def check_caseA(d: DiracOperator, f: EvolutionOperator) -> ConditionReport:
    """Conditions on the lambda_j for given real A^(i) = A^(i)(x_i).

    Reports the four derived sub-systems plus the uncoupled per-axis
    condition, all lambda_0-cleared.
    """
    sig = d.sig
    n = sig.n
    if not f.real_valued:
        raise WrongCase("case A requires real-valued evolution coefficients")
    _require_lambda0(d)
    for i in range(n + 1):
        if not f.coeff(i).depends_only_on(i):
            raise PreconditionViolated(
                f"A^({i}) must depend only on x_{i} in case A"
            )

    entries: List[ConditionEntry] = []
    lam0 = d.lam(0)
    for i in range(1, n + 1):
        lam_i = d.lam(i)
        # lambda_0^2 * [ d_0 A^(i) + alpha_i beta_i^2 d_i A^(0)
        #                - 2 beta_i sum_{k>i} gamma_ik beta_k d_k A^(0) ]
        t1 = lam0 * (lam0 * f.coeff(i).partial(0))
        t1 = t1 + sig.alpha_at(i) * (lam_i * (lam_i * f.coeff(0).partial(i)))
        for k in range(i + 1, n + 1):
            g = sig.gamma_at(i, k)
            if g != 0:
                t1 = t1 - 2 * g * (lam_i * (d.lam(k) * f.coeff(0).partial(k)))
        entries.append(_entry(f"caseA.t1[i={i}]", t1))

        for j in range(1, n + 1):
            if j != i:
                entries.append(
                    _entry(f"caseA.t2[i={i},j={j}]", d.lam(j) * f.coeff(i).partial(j))
                )

        # lambda_0^2 * [ beta_i(d_i A^(i) - d_0 A^(0))
        #                - sum_j A^(j) d_j(beta_i) ]
        t3 = lam0 * (lam_i * (f.coeff(i).partial(i) - f.coeff(0).partial(0)))
        for j in range(n + 1):
            t3 = t3 - f.coeff(j) * _cleared_beta_derivative(d, j, i)
        entries.append(_entry(f"caseA.t3[i={i}]", t3))

        for j in range(1, n + 1):
            if j != i:
                entries.append(
                    _entry(
                        f"caseA.t4[i={i},j={j}]",
                        d.lam(j) * (lam_i * f.coeff(0).partial(j)),
                    )
                )

        entries.append(_entry(f"caseA.uncoupled[i={i}]", t3))
    return ConditionReport(case="A", entries=tuple(entries))


# ---------------------------------------------------------------------------
# Brute-force monogenic basis and empirical oracle
# ---------------------------------------------------------------------------

def _coordinate_basis(sig: Signature, degree: int) -> list:
    """(monomial, blade) coordinates of the polynomial space, fixed order."""
    return [
        (mono, mask)
        for mono in monomials_up_to(sig.n + 1, degree)
        for mask in range(sig.dim)
    ]


def _field_to_rows(u: PolyField, row_index: dict, column: dict) -> None:
    for mono, mv in u.items():
        for mask, coeff in mv.items():
            key = (mono, mask)
            row = row_index.setdefault(key, len(row_index))
            column[row] = coeff


def _linear_map_nullspace(sig: Signature, coords: list, image):
    """Kernel basis of a linear map given by `image(coordinate unit field)`.

    Returns (vectors, matrix); vectors are coefficient tuples over the
    `coords` ordering.
    """
    row_index: dict = {}
    columns = []
    for mono, mask in coords:
        unit = PolyField.single(sig, mono, Multivector.basis(sig, mask))
        out = image(unit)
        col: dict = {}
        _field_to_rows(out, row_index, col)
        columns.append(col)
    nrows = len(row_index)
    rows = [[Fraction(0)] * len(coords) for _ in range(nrows)]
    for c, col in enumerate(columns):
        for r, v in col.items():
            rows[r][c] = v
    matrix = RatMatrix.from_rows(rows) if nrows else RatMatrix.zero(0, len(coords))
    return nullspace(matrix), matrix


def monogenic_basis(d: DiracOperator, degree: int) -> list:
    """Exact basis of {u polynomial, deg <= degree : D u = 0}.

    Assembles D as a linear map on (monomial, blade) coordinates and
    returns the nullspace as PolyFields, deterministically ordered.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    sig = d.sig
    coords = _coordinate_basis(sig, degree)
    vectors, _ = _linear_map_nullspace(sig, coords, lambda u: apply_dirac(d, u))
    basis = []
    for vec in vectors:
        terms: dict = {}
        for (mono, mask), coeff in zip(coords, vec):
            if coeff != 0:
                cur = terms.get(mono, {})
                cur = dict(cur)
                cur[mask] = coeff
                terms[mono] = cur
        basis.append(
            PolyField(sig, {m: Multivector(sig, t) for m, t in terms.items()})
        )
    return basis


@dataclass(frozen=True)
class OracleReport:
    """Result of the direct D(F u) = 0 sweep over a monogenic basis."""

    passed: bool
    basis_size: int
    degree: int
    counterexample: Optional[PolyField]
    residual: Optional[PolyField]


def empirical_associated(
    d: DiracOperator, f: EvolutionOperator, degree: int
) -> OracleReport:
    """Check D(F u) = 0 for every u in monogenic_basis(d, degree)."""
    basis = monogenic_basis(d, degree)
    for u in basis:
        residual = apply_dirac(d, apply_evolution(f, u))
        if not residual.is_zero:
            return OracleReport(
                passed=False,
                basis_size=len(basis),
                degree=degree,
                counterexample=u,
                residual=residual,
            )
    return OracleReport(
        passed=True, basis_size=len(basis), degree=degree,
        counterexample=None, residual=None,
    )


# ---------------------------------------------------------------------------
# Enumeration of admissible operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ansatz:
    """Shape of the unknown evolution coefficients.

    degree: polynomial degree of every component.
    homogeneous: restrict to exactly that degree (no lower terms).
    real_valued: components carry only an e_0 part.
    """

    degree: int
    homogeneous: bool
    real_valued: bool


@dataclass(frozen=True)
class AdmissibleBasis:
    operators: tuple
    dimension: int
    ansatz: Ansatz
    condition_matrix: RatMatrix
    unknowns: tuple  # (operator index, blade mask, monomial) per column


def _ansatz_unknowns(sig: Signature, ansatz: Ansatz) -> list:
    nvars = sig.n + 1
    if ansatz.homogeneous:
        monos = monomials_of_degree(nvars, ansatz.degree)
    else:
        monos = monomials_up_to(nvars, ansatz.degree)
    masks = (0,) if ansatz.real_valued else tuple(range(sig.dim))
    return [
        (i, mask, mono)
        for i in range(nvars)
        for mask in masks
        for mono in sorted(monos, key=grlex_key)
    ]


def _build_operator(sig: Signature, unknowns: list, vec) -> EvolutionOperator:
    coeff_terms = [dict() for _ in range(sig.n + 1)]
    for (i, mask, mono), value in zip(unknowns, vec):
        if value != 0:
            cur = coeff_terms[i].setdefault(mono, {})
            cur[mask] = value
    coeffs = tuple(
        PolyField(sig, {m: Multivector(sig, t) for m, t in terms.items()})
        for terms in coeff_terms
    )
    return EvolutionOperator(sig, coeffs)


def enumerate_admissible(d: DiracOperator, ansatz: Ansatz) -> AdmissibleBasis:
    """All evolution operators of the given shape associated to D.

    Treats every component coefficient as an unknown, imposes the
    case I (real) or case II (algebra-valued, n = 2) condition system
    as polynomial identities, and returns the exact nullspace of the
    resulting homogeneous linear system as an operator basis.
    """
    sig = d.sig
    if not d.has_constant_coefficients:
        raise UnsupportedCase("enumeration requires constant lambda coefficients")
    if not ansatz.real_valued and sig.n != 2:
        raise UnsupportedCase("algebra-valued enumeration is implemented for n = 2 only")
    _require_lambda0(d)
    checker = check_case1 if ansatz.real_valued else check_case2

    unknowns = _ansatz_unknowns(sig, ansatz)
    row_index: dict = {}
    columns = []
    for k in range(len(unknowns)):
        vec = [Fraction(1) if j == k else Fraction(0) for j in range(len(unknowns))]
        f = _build_operator(sig, unknowns, vec)
        report = checker(d, f)
        col: dict = {}
        for entry_idx, entry in enumerate(report.entries):
            for mono, mv in entry.residual.items():
                for mask, coeff in mv.items():
                    key = (entry_idx, mono, mask)
                    row = row_index.setdefault(key, len(row_index))
                    col[row] = coeff
        columns.append(col)
    nrows = len(row_index)
    rows = [[Fraction(0)] * len(unknowns) for _ in range(nrows)]
    for c, col in enumerate(columns):
        for r, v in col.items():
            rows[r][c] = v
    matrix = RatMatrix.from_rows(rows) if nrows else RatMatrix.zero(0, len(unknowns))
    vectors = nullspace(matrix)
    operators = tuple(_build_operator(sig, unknowns, vec) for vec in vectors)
    return AdmissibleBasis(
        operators=operators,
        dimension=len(operators),
        ansatz=ansatz,
        condition_matrix=matrix,
        unknowns=tuple(unknowns),
    )
