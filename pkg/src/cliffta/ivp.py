"""Constructive solution of u_t = F u, u(0, x) = phi(x).

Solutions are built as fixed points of the integro-differential map

    u  ->  phi + integral_0^t (F u)(tau, x) dtau

on polynomials in t with PolyField coefficients.  All arithmetic is
exact, so fixed-point detection is plain structural equality; for
constant-coefficient F and polynomial phi the iteration terminates
exactly.  Non-convergence within the iteration budget is returned as
data (a truncated Taylor approximation), not raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from cliffta.algebra import SignatureMismatch
from cliffta.polyfield import PolyField
from cliffta.operators import (
    DiracOperator,
    EvolutionOperator,
    apply_dirac,
    apply_evolution,
)

DEFAULT_EXTRA_ORDERS = 4


@dataclass(frozen=True)
class TimeSeriesField:
    """Polynomial in t with PolyField coefficients, truncated at t^truncation."""

    sig: object
    coeffs: tuple  # coeffs[k] multiplies t^k; trailing zeros pruned
    truncation: int

    def __post_init__(self):
        trimmed = list(self.coeffs)
        while trimmed and trimmed[-1].is_zero:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))
        if len(self.coeffs) > self.truncation + 1:
            raise ValueError("coefficients exceed the truncation order")

    @classmethod
    def from_initial(cls, phi: PolyField, truncation: int) -> "TimeSeriesField":
        return cls(phi.sig, (phi,), truncation)

    def coefficient(self, k: int) -> PolyField:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return PolyField.zero(self.sig)

    @property
    def order(self) -> int:
        """Degree in t; -1 for the zero series."""
        return len(self.coeffs) - 1

    def at_time_zero(self) -> PolyField:
        return self.coefficient(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class TraceReport:
    """Per-order residuals of D applied to each t^k coefficient."""

    passed: bool
    residuals: tuple


@dataclass(frozen=True)
class SolveDiagnostics:
    iterations: int
    converged: bool
    residual: TimeSeriesField
    monogenic_trace_passed: Optional[bool]


def picard_step(
    f: EvolutionOperator, phi: PolyField, u: TimeSeriesField
) -> TimeSeriesField:
    """One application of u -> phi + integral_0^t F u dtau, truncated."""
    if f.sig != phi.sig or f.sig != u.sig:
        raise SignatureMismatch("operator, initial function and series must match")
    nt = u.truncation
    out = [PolyField.zero(f.sig) for _ in range(nt + 1)]
    out[0] = phi
    for k in range(min(len(u.coeffs), nt)):
        out[k + 1] = apply_evolution(f, u.coeffs[k]).scale(Fraction(1, k + 1))
    return TimeSeriesField(f.sig, tuple(out), nt)


def time_residual(f: EvolutionOperator, u: TimeSeriesField) -> TimeSeriesField:
    """d_t u - F u, exact coefficient-wise, truncated at t^(truncation-1)."""
    nt = max(u.truncation - 1, 0)
    out = []
    for k in range(nt + 1):
        out.append(
            u.coefficient(k + 1).scale(k + 1) - apply_evolution(f, u.coefficient(k))
        )
    return TimeSeriesField(u.sig, tuple(out), nt)


def monogenicity_trace(d: DiracOperator, u: TimeSeriesField) -> TraceReport:
    """Apply D to every t^k coefficient; pass iff all vanish exactly."""
    residuals = tuple(apply_dirac(d, c) for c in u.coeffs)
    return TraceReport(
        passed=all(r.is_zero for r in residuals), residuals=residuals
    )


def solve_ivp(
    f: EvolutionOperator,
    phi: PolyField,
    nt: Optional[int] = None,
    max_iter: int = 25,
    dirac: Optional[DiracOperator] = None,
):
    """Iterate the Picard map from u_0 = phi until an exact fixed point.

    Returns (series, diagnostics).  The truncation order defaults to
    deg(phi) + 4, enough headroom for constant-coefficient F to reach
    its fixed point with the termination visible.  When `dirac` is
    given, the diagnostics include the monogenicity-trace verdict.
    """
    if nt is None:
        nt = max(phi.degree(), 0) + DEFAULT_EXTRA_ORDERS
    u = TimeSeriesField.from_initial(phi, nt)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        nxt = picard_step(f, phi, u)
        if nxt == u:
            converged = True
            break
        u = nxt
    residual = time_residual(f, u)
    trace_passed = None
    if dirac is not None:
        trace_passed = monogenicity_trace(dirac, u).passed
    return u, SolveDiagnostics(
        iterations=iterations,
        converged=converged,
        residual=residual,
        monogenic_trace_passed=trace_passed,
    )
