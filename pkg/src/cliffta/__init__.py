"""Exact computation in parameter-dependent Clifford-type algebras.

Provides exact multivector arithmetic, polynomial function fields,
generalized Cauchy-Riemann operators, associated-pair condition
checking, admissible-operator enumeration, and constructive solution
of initial value problems u_t = F u with monogenic initial data.
"""

from cliffta.algebra import (
    AlgebraError,
    InvalidBlade,
    Multivector,
    Signature,
    SignatureMismatch,
    blade_mul,
    blade_name,
    classical_sign,
)
from cliffta.polyfield import PolyField

__all__ = [
    "AlgebraError",
    "InvalidBlade",
    "Multivector",
    "PolyField",
    "Signature",
    "SignatureMismatch",
    "blade_mul",
    "blade_name",
    "classical_sign",
]

__version__ = "0.1.0"
