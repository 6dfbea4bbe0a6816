"""Exact arithmetic in Clifford-type algebras with rational parameters.

The algebra on generators e_1 .. e_n is fixed by the rewriting relations

    e_j * e_j           -> -alpha_j * e_0
    e_i * e_j  (i > j)  -> 2*gamma_ij * e_0 - e_j * e_i

with rational parameters alpha_j and a symmetric rational matrix
gamma_ij (zero diagonal).  e_0 is the multiplicative identity.  Basis
blades are products of distinct generators in strictly increasing
order, encoded as bitmasks (bit k-1 set means generator e_k occurs).

With alpha = 1 and gamma = 0 the algebra degenerates to the classical
Clifford algebra; `classical_sign` computes products in that case by
inversion counting, independently of the rewriting engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

# Blade names concatenate generator digits (e_1*e_2 = e12), so indices
# must stay single-digit.
MAX_GENERATORS = 9

Scalar = Union[Fraction, int]


class AlgebraError(Exception):
    """Base class for algebra-layer errors."""


class InvalidBlade(AlgebraError):
    """A blade references a generator outside the signature."""


class SignatureMismatch(AlgebraError):
    """Operands belong to different algebras."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Signature:
    """Parameters (n, alpha_j, gamma_ij) of one algebra; immutable."""

    n: int
    alpha: tuple
    gamma: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GENERATORS:
            raise AlgebraError(f"generator count must be 1..{MAX_GENERATORS}, got {self.n}")
        if len(self.alpha) != self.n:
            raise AlgebraError(f"expected {self.n} alpha entries, got {len(self.alpha)}")
        if len(self.gamma) != self.n or any(len(row) != self.n for row in self.gamma):
            raise AlgebraError("gamma must be an n x n matrix")
        for i in range(self.n):
            if self.gamma[i][i] != 0:
                raise AlgebraError("gamma diagonal entries must be zero")
            for j in range(self.n):
                if self.gamma[i][j] != self.gamma[j][i]:
                    raise AlgebraError("gamma must be symmetric")

    @classmethod
    def create(cls, n: int, alpha: Iterable, gamma: Mapping = None) -> "Signature":
        """Build a signature from alpha values and a {(i, j): value} map.

        Generator indices in `gamma` are 1-based; each pair needs only
        one orientation.
        """
        alpha_t = tuple(as_fraction(a) for a in alpha)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), value in (gamma or {}).items():
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise AlgebraError(f"bad gamma index pair ({i}, {j})")
            v = as_fraction(value)
            rows[i - 1][j - 1] = v
            rows[j - 1][i - 1] = v
        return cls(n, alpha_t, tuple(tuple(r) for r in rows))

    @classmethod
    def classical(cls, n: int) -> "Signature":
        """The classical Clifford algebra: alpha = 1, gamma = 0."""
        return cls.create(n, [1] * n)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def alpha_at(self, j: int) -> Fraction:
        """alpha_j for 1 <= j <= n."""
        return self.alpha[j - 1]

    def gamma_at(self, i: int, j: int) -> Fraction:
        """gamma_ij for 1 <= i, j <= n."""
        return self.gamma[i - 1][j - 1]


# ---------------------------------------------------------------------------
# Blades as bitmasks
# ---------------------------------------------------------------------------

def blade_gens(mask: int) -> tuple:
    """Generator indices of a blade, strictly increasing, 1-based."""
    return tuple(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def blade_from_gens(gens: Iterable[int]) -> int:
    mask = 0
    for g in gens:
        mask |= 1 << (g - 1)
    return mask


def blade_name(mask: int) -> str:
    """Display name: e0 for the unit, e12 for e_1*e_2, etc."""
    if mask == 0:
        return "e0"
    return "e" + "".join(str(g) for g in blade_gens(mask))


def check_blade(sig: Signature, mask: int) -> None:
    if mask < 0 or mask >= sig.dim:
        raise InvalidBlade(f"blade {blade_name(mask)} not valid for n={sig.n}")


@lru_cache(maxsize=None)
def _word_normal_form(sig: Signature, word: tuple) -> tuple:
    """Normal form of a generator word as ((blade_mask, coeff), ...).

    Rewrites the leftmost violation.  Each step either shortens the
    word or keeps the length while removing one inversion, so the
    measure (length, inversions) decreases lexicographically and the
    recursion terminates.
    """
    for idx in range(len(word) - 1):
        i, j = word[idx], word[idx + 1]
        if i == j:
            rest = _word_normal_form(sig, word[:idx] + word[idx + 2:])
            scale = -sig.alpha_at(i)
            return tuple((m, c * scale) for m, c in rest)
        if i > j:
            acc = {}
            g = sig.gamma_at(i, j)
            if g != 0:
                dropped = _word_normal_form(sig, word[:idx] + word[idx + 2:])
                for m, c in dropped:
                    acc[m] = acc.get(m, Fraction(0)) + 2 * g * c
            swapped = _word_normal_form(sig, word[:idx] + (j, i) + word[idx + 2:])
            for m, c in swapped:
                acc[m] = acc.get(m, Fraction(0)) - c
            return tuple(sorted((m, c) for m, c in acc.items() if c != 0))
    return ((blade_from_gens(word), Fraction(1)),)


@lru_cache(maxsize=None)
def _blade_mul_terms(sig: Signature, a: int, b: int) -> tuple:
    check_blade(sig, a)
    check_blade(sig, b)
    return _word_normal_form(sig, blade_gens(a) + blade_gens(b))


def blade_mul(sig: Signature, a: int, b: int) -> "Multivector":
    """Normal form of the product of two canonical blades."""
    return Multivector(sig, dict(_blade_mul_terms(sig, a, b)))


def classical_sign(a: int, b: int) -> tuple:
    """Product blade and sign in the classical algebra (alpha=1, gamma=0).

    Independent oracle: sorts the concatenated generator word counting
    transpositions, then cancels equal adjacent pairs via e_k^2 = -1.
    """
    word = list(blade_gens(a)) + list(blade_gens(b))
    sign = 1
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1] > word[j]:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    out = []
    k = 0
    while k < len(word):
        if k + 1 < len(word) and word[k] == word[k + 1]:
            sign = -sign
            k += 2
        else:
            out.append(word[k])
            k += 1
    return blade_from_gens(out), sign


# ---------------------------------------------------------------------------
# Multivectors
# ---------------------------------------------------------------------------

class Multivector:
    """Sparse exact element of the algebra: {blade mask: Fraction}.

    Immutable; zero coefficients are pruned on construction so
    structural equality is mathematical equality.
    """

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[int, Fraction]):
        pruned = {}
        for mask, coeff in terms.items():
            check_blade(sig, mask)
            c = as_fraction(coeff)
            if c != 0:
                pruned[mask] = c
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "_terms", pruned)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, {})

    @classmethod
    def unit(cls, sig: Signature) -> "Multivector":
        return cls(sig, {0: Fraction(1)})

    @classmethod
    def scalar(cls, sig: Signature, value) -> "Multivector":
        return cls(sig, {0: as_fraction(value)})

    @classmethod
    def basis(cls, sig: Signature, mask: int) -> "Multivector":
        return cls(sig, {mask: Fraction(1)})

    # -- inspection ---------------------------------------------------------

    def items(self):
        """Terms as (mask, coeff), ascending by blade mask."""
        return sorted(self._terms.items())

    def coefficient(self, mask: int) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_scalar(self) -> bool:
        return all(mask == 0 for mask in self._terms)

    def __len__(self):
        return len(self._terms)

    # -- ring operations ----------------------------------------------------

    def _require_same_sig(self, other: "Multivector") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch("multivectors from different algebras")

    def __add__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        self._require_same_sig(other)
        acc = dict(self._terms)
        for mask, c in other._terms.items():
            acc[mask] = acc.get(mask, Fraction(0)) + c
        return Multivector(self.sig, acc)

    def __sub__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector(self.sig, {m: -c for m, c in self._terms.items()})

    def scale(self, value) -> "Multivector":
        c = as_fraction(value)
        return Multivector(self.sig, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._require_same_sig(other)
            acc = {}
            for ma, ca in self._terms.items():
                for mb, cb in other._terms.items():
                    w = ca * cb
                    for mask, coeff in _blade_mul_terms(self.sig, ma, mb):
                        acc[mask] = acc.get(mask, Fraction(0)) + w * coeff
            return Multivector(self.sig, acc)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    def __hash__(self):
        return hash((self.sig, tuple(sorted(self._terms.items()))))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Multivector({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mask, coeff in self.items():
            mag = abs(coeff)
            body = blade_name(mask) if mag == 1 else f"{mag}*{blade_name(mask)}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)
