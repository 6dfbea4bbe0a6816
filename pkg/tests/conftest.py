"""Shared randomized-object helpers; all tests seed their own rng."""

from fractions import Fraction
import random

from cliffta.algebra import Multivector, Signature
from cliffta.polyfield import PolyField


def random_signature(rng: random.Random, n: int = None) -> Signature:
    if n is None:
        n = rng.randint(1, 4)
    alpha = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
    gamma = {
        (i, j): Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    }
    return Signature.create(n, alpha, gamma)


def random_multivector(rng: random.Random, sig: Signature, nterms: int = 3) -> Multivector:
    terms = {}
    for _ in range(nterms):
        terms[rng.randrange(sig.dim)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Multivector(sig, terms)


def random_polyfield(
    rng: random.Random,
    sig: Signature,
    degree: int = 2,
    nterms: int = 3,
    real: bool = False,
) -> PolyField:
    terms = {}
    for _ in range(nterms):
        mono = [0] * (sig.n + 1)
        for _ in range(rng.randint(0, degree)):
            mono[rng.randrange(sig.n + 1)] += 1
        mv = (
            Multivector.scalar(sig, Fraction(rng.randint(-3, 3)))
            if real
            else random_multivector(rng, sig, nterms=2)
        )
        key = tuple(mono)
        terms[key] = terms.get(key, Multivector.zero(sig)) + mv
    return PolyField(sig, terms)


def random_point(rng: random.Random, sig: Signature) -> list:
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(sig.n + 1)]
