"""Polynomial functions R^{n+1} -> algebra, with exact ring operations.

A PolyField is a sparse map from monomials in x_0 .. x_n (exponent
tuples of length n+1) to multivector coefficients.  The scalar
variables x_k commute with every blade, so a term is stored as
(monomial) * (multivector) with the multivector conceptually on the
right.  Iteration order is graded-lexicographic on monomials, which
fixes serialization and basis output.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from cliffta.algebra import (
    Multivector,
    Signature,
    SignatureMismatch,
    as_fraction,
)

Monomial = tuple


def grlex_key(mono: Monomial):
    """Graded-lexicographic sort key: total degree, then exponents."""
    return (sum(mono), mono)


def monomials_of_degree(nvars: int, degree: int) -> list:
    """All exponent tuples with the given total degree, grlex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    return sorted(set(out), key=grlex_key)


def monomials_up_to(nvars: int, degree: int) -> list:
    """All exponent tuples with total degree <= degree, grlex order."""
    out = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


class PolyField:
    """Multivariate polynomial with multivector coefficients; immutable."""

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[Monomial, Multivector]):
        nvars = sig.n + 1
        pruned = {}
        for mono, mv in terms.items():
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {nvars} variables")
            if mv.sig != sig:
                raise SignatureMismatch("coefficient from a different algebra")
            if not mv.is_zero:
                pruned[tuple(mono)] = mv
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "_terms", pruned)

    def __setattr__(self, name, value):
        raise AttributeError("PolyField is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "PolyField":
        return cls(sig, {})

    @classmethod
    def constant(cls, sig: Signature, mv: Multivector) -> "PolyField":
        return cls(sig, {(0,) * (sig.n + 1): mv})

    @classmethod
    def scalar(cls, sig: Signature, value) -> "PolyField":
        return cls.constant(sig, Multivector.scalar(sig, as_fraction(value)))

    @classmethod
    def blade(cls, sig: Signature, mask: int) -> "PolyField":
        return cls.constant(sig, Multivector.basis(sig, mask))

    @classmethod
    def variable(cls, sig: Signature, k: int) -> "PolyField":
        """The coordinate function x_k (0 <= k <= n)."""
        if not 0 <= k <= sig.n:
            raise ValueError(f"axis {k} out of range 0..{sig.n}")
        mono = tuple(1 if i == k else 0 for i in range(sig.n + 1))
        return cls(sig, {mono: Multivector.unit(sig)})

    @classmethod
    def single(cls, sig: Signature, mono: Monomial, mv: Multivector) -> "PolyField":
        return cls(sig, {tuple(mono): mv})

    # -- inspection ---------------------------------------------------------

    def items(self):
        """Terms as (monomial, multivector), graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coefficient(self, mono: Monomial) -> Multivector:
        return self._terms.get(tuple(mono), Multivector.zero(self.sig))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_real_valued(self) -> bool:
        """True iff every coefficient has only an e_0 component."""
        return all(mv.is_scalar for mv in self._terms.values())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def component(self, mask: int) -> "PolyField":
        """The real-valued e_0-polynomial multiplying the given blade."""
        acc = {}
        for mono, mv in self._terms.items():
            c = mv.coefficient(mask)
            if c != 0:
                acc[mono] = Multivector.scalar(self.sig, c)
        return PolyField(self.sig, acc)

    def depends_only_on(self, k: int) -> bool:
        """True iff no monomial uses a variable other than x_k."""
        return all(
            all(e == 0 for i, e in enumerate(mono) if i != k)
            for mono in self._terms
        )

    # -- ring operations ----------------------------------------------------

    def _require_same_sig(self, other: "PolyField") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch("polynomials over different algebras")

    def __add__(self, other: "PolyField") -> "PolyField":
        if not isinstance(other, PolyField):
            return NotImplemented
        self._require_same_sig(other)
        acc = dict(self._terms)
        for mono, mv in other._terms.items():
            cur = acc.get(mono)
            acc[mono] = mv if cur is None else cur + mv
        return PolyField(self.sig, acc)

    def __sub__(self, other: "PolyField") -> "PolyField":
        if not isinstance(other, PolyField):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "PolyField":
        return PolyField(self.sig, {m: -mv for m, mv in self._terms.items()})

    def scale(self, value) -> "PolyField":
        c = as_fraction(value)
        return PolyField(self.sig, {m: mv.scale(c) for m, mv in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyField):
            self._require_same_sig(other)
            acc = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    mono = tuple(a + b for a, b in zip(m1, m2))
                    prod = c1 * c2
                    cur = acc.get(mono)
                    acc[mono] = prod if cur is None else cur + prod
            return PolyField(self.sig, acc)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "PolyField":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = PolyField.scalar(self.sig, 1)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus and evaluation --------------------------------------------

    def partial(self, k: int) -> "PolyField":
        """Exact partial derivative with respect to x_k."""
        if not 0 <= k <= self.sig.n:
            raise ValueError(f"axis {k} out of range 0..{self.sig.n}")
        acc = {}
        for mono, mv in self._terms.items():
            e = mono[k]
            if e == 0:
                continue
            lowered = tuple(v - 1 if i == k else v for i, v in enumerate(mono))
            scaled = mv.scale(e)
            cur = acc.get(lowered)
            acc[lowered] = scaled if cur is None else cur + scaled
        return PolyField(self.sig, acc)

    def evaluate(self, point: Iterable) -> Multivector:
        """Exact substitution of a rational point of length n+1."""
        pt = [as_fraction(p) for p in point]
        if len(pt) != self.sig.n + 1:
            raise ValueError(f"point must have {self.sig.n + 1} coordinates")
        total = Multivector.zero(self.sig)
        for mono, mv in self._terms.items():
            factor = Fraction(1)
            for p, e in zip(pt, mono):
                factor *= p ** e
            total = total + mv.scale(factor)
        return total

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PolyField):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    def __hash__(self):
        return hash((self.sig, tuple(sorted(self._terms.items(), key=lambda kv: kv[0]))))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        from cliffta.exprparse import format_polyfield

        return f"PolyField({format_polyfield(self)})"
