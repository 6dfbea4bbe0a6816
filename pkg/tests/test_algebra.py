"""Blade products, the multivector ring, and the classical degeneration."""

from fractions import Fraction
import random

import pytest

from cliffta.algebra import (
    AlgebraError,
    InvalidBlade,
    Multivector,
    Signature,
    SignatureMismatch,
    blade_from_gens,
    blade_gens,
    blade_mul,
    blade_name,
    classical_sign,
)
from conftest import random_multivector, random_signature


@pytest.fixture
def sig2():
    # A_2 with alpha = (3, 5), gamma_12 = 7
    return Signature.create(2, [3, 5], {(1, 2): 7})


class TestSignature:
    def test_symmetry_enforced(self):
        with pytest.raises(AlgebraError):
            Signature(2, (Fraction(1), Fraction(1)),
                      ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(0))))

    def test_diagonal_gamma_rejected(self):
        with pytest.raises(AlgebraError):
            Signature.create(2, [1, 1], {(1, 1): 1})

    def test_generator_count_bounds(self):
        with pytest.raises(AlgebraError):
            Signature.create(0, [])
        with pytest.raises(AlgebraError):
            Signature.create(10, [1] * 10)

    def test_classical(self):
        sig = Signature.classical(3)
        assert sig.alpha_at(2) == 1
        assert sig.gamma_at(1, 3) == 0
        assert sig.dim == 8


class TestBladeMul:
    def test_square_is_minus_alpha(self, sig2):
        assert blade_mul(sig2, 1, 1) == Multivector.scalar(sig2, -3)

    def test_ordered_product_is_canonical(self, sig2):
        assert blade_mul(sig2, 1, 2) == Multivector.basis(sig2, 3)

    def test_anticommutation(self, sig2):
        # e2*e1 = 2*gamma_12 - e12
        expected = Multivector(sig2, {0: Fraction(14), 3: Fraction(-1)})
        assert blade_mul(sig2, 2, 1) == expected

    def test_e12_times_e1(self, sig2):
        # brute-force word rewriting gives 2*gamma_12*e1 + alpha_1*e2
        expected = Multivector(sig2, {1: Fraction(14), 2: Fraction(3)})
        assert blade_mul(sig2, 3, 1) == expected

    def test_out_of_range_blade(self, sig2):
        with pytest.raises(InvalidBlade):
            blade_mul(sig2, 4, 1)

    def test_relation_soundness_exhaustive(self):
        # e_i e_j + e_j e_i = 2 gamma_ij, e_j e_j = -alpha_j, for n <= 5
        rng = random.Random(7)
        for n in range(1, 6):
            sig = random_signature(rng, n)
            for j in range(1, n + 1):
                ej = 1 << (j - 1)
                assert blade_mul(sig, ej, ej) == Multivector.scalar(sig, -sig.alpha_at(j))
                for i in range(1, n + 1):
                    if i == j:
                        continue
                    ei = 1 << (i - 1)
                    lhs = blade_mul(sig, ei, ej) + blade_mul(sig, ej, ei)
                    assert lhs == Multivector.scalar(sig, 2 * sig.gamma_at(i, j))


class TestClassicalSignOracle:
    def test_examples(self):
        assert classical_sign(1, 2) == (3, 1)
        assert classical_sign(2, 1) == (3, -1)
        assert classical_sign(3, 2) == (1, -1)

    def test_agreement_exhaustive(self):
        for n in range(1, 6):
            sig = Signature.classical(n)
            for a in range(sig.dim):
                for b in range(sig.dim):
                    mask, sign = classical_sign(a, b)
                    assert blade_mul(sig, a, b) == Multivector(sig, {mask: Fraction(sign)})


class TestMultivectorRing:
    def test_unit(self, sig2):
        rng = random.Random(11)
        one = Multivector.unit(sig2)
        for _ in range(20):
            u = random_multivector(rng, sig2)
            assert one * u == u
            assert u * one == u

    def test_scalar_two_doubles(self, sig2):
        rng = random.Random(12)
        two = Multivector.scalar(sig2, 2)
        v = random_multivector(rng, sig2)
        assert two * v == v + v

    def test_e12_squared_classical(self):
        sig = Signature.classical(2)
        e12 = Multivector.basis(sig, 3)
        assert e12 * e12 == Multivector.scalar(sig, -1)

    def test_associativity_random(self):
        rng = random.Random(13)
        for _ in range(80):
            sig = random_signature(rng)
            u, v, w = (random_multivector(rng, sig) for _ in range(3))
            assert (u * v) * w == u * (v * w)

    def test_distributivity_and_bilinearity(self):
        rng = random.Random(14)
        for _ in range(60):
            sig = random_signature(rng)
            u, v, w = (random_multivector(rng, sig) for _ in range(3))
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            assert u * (v + w) == u * v + u * w
            assert (u + v) * w == u * w + v * w
            assert (u.scale(c)) * v == (u * v).scale(c)
            assert u * (v.scale(c)) == (u * v).scale(c)

    def test_signature_mismatch(self):
        a = Multivector.unit(Signature.classical(2))
        b = Multivector.unit(Signature.classical(3))
        with pytest.raises(SignatureMismatch):
            a * b
        with pytest.raises(SignatureMismatch):
            a + b

    def test_zero_pruning(self, sig2):
        u = Multivector(sig2, {1: Fraction(2), 2: Fraction(0)})
        assert len(u) == 1
        assert (u - u).is_zero


def test_blade_helpers():
    assert blade_gens(0b101) == (1, 3)
    assert blade_from_gens([1, 3]) == 0b101
    assert blade_name(0) == "e0"
    assert blade_name(0b110) == "e23"
