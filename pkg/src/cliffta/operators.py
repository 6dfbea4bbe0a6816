"""First- and second-order operators of the hypercomplex function theory.

Implements the generalized Cauchy-Riemann operator

    D u = sum_j lambda_j(x) e_j d_j u        (lambda_j real-valued)

its conjugate Dbar, evolution operators F u = sum_i A^(i)(x) d_i u,
the product formula for D(u*v), the expanded form of Dbar(D u), and an
exact ellipticity verdict for the second-order symbol when the
lambda_j are constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cliffta.algebra import Multivector, Signature, SignatureMismatch
from cliffta.polyfield import PolyField
from cliffta.ratlinalg import RatMatrix, det


class OperatorError(Exception):
    """Base class for operator-layer errors."""


class NonConstantCoefficients(OperatorError):
    """An operation needed constant coefficients but got polynomials."""


@dataclass(frozen=True)
class DiracOperator:
    """Coefficient bundle (lambda_0 .. lambda_n) over one signature."""

    sig: Signature
    lambdas: tuple  # n+1 real-valued PolyFields

    def __post_init__(self):
        if len(self.lambdas) != self.sig.n + 1:
            raise OperatorError(
                f"expected {self.sig.n + 1} lambda coefficients, got {len(self.lambdas)}"
            )
        for j, lam in enumerate(self.lambdas):
            if lam.sig != self.sig:
                raise SignatureMismatch(f"lambda_{j} over a different algebra")
            if not lam.is_real_valued:
                raise OperatorError(f"lambda_{j} must be real-valued")

    @classmethod
    def constant(cls, sig: Signature, values) -> "DiracOperator":
        return cls(sig, tuple(PolyField.scalar(sig, v) for v in values))

    def lam(self, j: int) -> PolyField:
        return self.lambdas[j]

    @property
    def has_constant_coefficients(self) -> bool:
        return all(lam.degree() <= 0 for lam in self.lambdas)

    def constant_values(self) -> list:
        """The lambda_j as Fractions; requires constant coefficients."""
        if not self.has_constant_coefficients:
            raise NonConstantCoefficients("lambda coefficients are not constant")
        zero = (0,) * (self.sig.n + 1)
        return [lam.coefficient(zero).coefficient(0) for lam in self.lambdas]


@dataclass(frozen=True)
class EvolutionOperator:
    """Coefficient bundle (A^(0) .. A^(n)); A^(i) may be algebra-valued."""

    sig: Signature
    coeffs: tuple  # n+1 PolyFields

    def __post_init__(self):
        if len(self.coeffs) != self.sig.n + 1:
            raise OperatorError(
                f"expected {self.sig.n + 1} coefficients, got {len(self.coeffs)}"
            )
        for i, a in enumerate(self.coeffs):
            if a.sig != self.sig:
                raise SignatureMismatch(f"A^({i}) over a different algebra")

    @classmethod
    def zero(cls, sig: Signature) -> "EvolutionOperator":
        return cls(sig, tuple(PolyField.zero(sig) for _ in range(sig.n + 1)))

    def coeff(self, i: int) -> PolyField:
        return self.coeffs[i]

    @property
    def real_valued(self) -> bool:
        return all(a.is_real_valued for a in self.coeffs)


def _check_sig(op_sig: Signature, u: PolyField) -> None:
    if u.sig != op_sig:
        raise SignatureMismatch("operator and field over different algebras")


def apply_dirac(d: DiracOperator, u: PolyField) -> PolyField:
    """D u = sum_j lambda_j e_j d_j u; u is monogenic iff this is zero."""
    _check_sig(d.sig, u)
    total = PolyField.zero(d.sig)
    for j in range(d.sig.n + 1):
        mask = 0 if j == 0 else 1 << (j - 1)
        ej = PolyField.blade(d.sig, mask)
        total = total + d.lam(j) * (ej * u.partial(j))
    return total


def apply_dirac_conj(d: DiracOperator, u: PolyField) -> PolyField:
    """Dbar u = lambda_0 d_0 u - sum_{j>=1} lambda_j e_j d_j u."""
    _check_sig(d.sig, u)
    total = d.lam(0) * u.partial(0)
    for j in range(1, d.sig.n + 1):
        ej = PolyField.blade(d.sig, 1 << (j - 1))
        total = total - d.lam(j) * (ej * u.partial(j))
    return total


def apply_evolution(f: EvolutionOperator, u: PolyField) -> PolyField:
    """F u = sum_i A^(i) d_i u, with A^(i) multiplying on the left."""
    _check_sig(f.sig, u)
    total = PolyField.zero(f.sig)
    for i in range(f.sig.n + 1):
        total = total + f.coeff(i) * u.partial(i)
    return total


def dirac_product(d: DiracOperator, u: PolyField, v: PolyField) -> PolyField:
    """D(u*v) via the product formula D(u)*v + sum_i lambda_i e_i (u * d_i v)."""
    _check_sig(d.sig, u)
    _check_sig(d.sig, v)
    total = apply_dirac(d, u) * v
    for i in range(d.sig.n + 1):
        mask = 0 if i == 0 else 1 << (i - 1)
        ei = PolyField.blade(d.sig, mask)
        total = total + d.lam(i) * (ei * (u * v.partial(i)))
    return total


def blade_commutator_shift(sig: Signature, j: int, u: PolyField) -> PolyField:
    """The difference e_j*u - u*e_j as a PolyField (any n, 1 <= j <= n)."""
    ej = PolyField.blade(sig, 1 << (j - 1))
    return ej * u - u * ej


def second_order(d: DiracOperator, u: PolyField) -> PolyField:
    """Dbar(D u) by composition of the two first-order operators."""
    return apply_dirac_conj(d, apply_dirac(d, u))


def second_order_expanded(d: DiracOperator, u: PolyField) -> PolyField:
    """Dbar(D u) by the expanded second-order formula.

    The alpha_i lambda_i^2 d_i^2 terms are summed over i = 1..n; the
    i = 0 contribution is the separate lambda_0^2 d_0^2 term.  Must
    agree with `second_order` on every input.
    """
    _check_sig(d.sig, u)
    sig = d.sig
    n = sig.n

    def blade_pf(j):
        return PolyField.blade(sig, 0 if j == 0 else 1 << (j - 1))

    total = PolyField.zero(sig)
    for i in range(n + 1):
        total = total + d.lam(0) * d.lam(i).partial(0) * (blade_pf(i) * u.partial(i))
    for j in range(1, n + 1):
        for i in range(n + 1):
            total = total - d.lam(j) * d.lam(i).partial(j) * (
                blade_pf(j) * (blade_pf(i) * u.partial(i))
            )
    total = total + d.lam(0) * d.lam(0) * u.partial(0).partial(0)
    for i in range(1, n + 1):
        total = total + sig.alpha_at(i) * (d.lam(i) * d.lam(i) * u.partial(i).partial(i))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            g = sig.gamma_at(i, j)
            if g != 0:
                total = total - 2 * g * (d.lam(i) * d.lam(j) * u.partial(i).partial(j))
    return total


@dataclass(frozen=True)
class EllipticityVerdict:
    """Exact definiteness verdict for the second-order principal symbol."""

    symbol: RatMatrix
    definite: bool
    c1_satisfied: bool
    c2_applicable_and_satisfied: bool


def ellipticity_check(d: DiracOperator) -> EllipticityVerdict:
    """Decide positive definiteness of the Dbar D principal symbol.

    Requires constant lambda.  The symbol of the quadratic form is
    lambda_0^2 xi_0^2 + sum alpha_i lambda_i^2 xi_i^2
    - 2 sum_{i<j} gamma_ij lambda_i lambda_j xi_i xi_j, decided exactly
    by Sylvester leading minors.  Also reports the two sufficient
    parameter shapes: all alpha_j > 0, and (gamma = 0 with all
    alpha_j > 0).
    """
    sig = d.sig
    n = sig.n
    lam = d.constant_values()
    size = n + 1
    entries = [[Fraction(0)] * size for _ in range(size)]
    entries[0][0] = lam[0] * lam[0]
    for i in range(1, size):
        entries[i][i] = sig.alpha_at(i) * lam[i] * lam[i]
        for j in range(1, size):
            if i != j:
                entries[i][j] = -sig.gamma_at(i, j) * lam[i] * lam[j]
    symbol = RatMatrix.from_rows(entries)
    definite = all(det(symbol.submatrix(k, k)) > 0 for k in range(1, size + 1))
    all_alpha_positive = all(sig.alpha_at(j) > 0 for j in range(1, n + 1))
    gamma_zero = all(
        sig.gamma_at(i, j) == 0
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
    )
    return EllipticityVerdict(
        symbol=symbol,
        definite=definite,
        c1_satisfied=all_alpha_positive,
        c2_applicable_and_satisfied=gamma_zero and all_alpha_positive,
    )
