"""The Cauchy-Riemann operator, product formulas, second order, ellipticity."""

from fractions import Fraction
import random

import pytest

from cliffta.algebra import Multivector, Signature
from cliffta.polyfield import PolyField
from cliffta.exprparse import parse_expr
from cliffta.operators import (
    DiracOperator,
    EvolutionOperator,
    NonConstantCoefficients,
    OperatorError,
    apply_dirac,
    apply_dirac_conj,
    apply_evolution,
    blade_commutator_shift,
    dirac_product,
    ellipticity_check,
    second_order,
    second_order_expanded,
)
from conftest import random_polyfield, random_signature


def random_dirac(rng, sig, constant=False, max_degree=1):
    lambdas = []
    for j in range(sig.n + 1):
        if constant or rng.random() < 0.5:
            pf = PolyField.scalar(sig, Fraction(rng.randint(-3, 3)))
        else:
            pf = random_polyfield(rng, sig, degree=max_degree, real=True)
        lambdas.append(pf)
    if lambdas[0].is_zero:
        lambdas[0] = PolyField.scalar(sig, 1)
    return DiracOperator(sig, tuple(lambdas))


class TestApplyDirac:
    def test_monogenic_independent_of_alpha(self):
        for alpha in (1, 3, Fraction(-2, 5)):
            sig = Signature.create(1, [alpha])
            d = DiracOperator.constant(sig, [1, 1])
            u = parse_expr("x1 - x0*e1", sig)
            assert apply_dirac(d, u).is_zero

    def test_x0_maps_to_one(self):
        sig = Signature.create(1, [1])
        d = DiracOperator.constant(sig, [1, 1])
        assert apply_dirac(d, parse_expr("x0", sig)) == PolyField.scalar(sig, 1)

    def test_alpha_balanced_monogenic(self):
        sig = Signature.create(1, [3])
        d = DiracOperator.constant(sig, [1, 1])
        u = parse_expr("x0 + 1/3*x1*e1", sig)
        assert apply_dirac(d, u).is_zero

    def test_rejects_nonreal_lambda(self):
        sig = Signature.classical(1)
        with pytest.raises(OperatorError):
            DiracOperator(sig, (PolyField.blade(sig, 1), PolyField.scalar(sig, 1)))


class TestApplyDiracConj:
    def test_explicit_value(self):
        sig = Signature.create(1, [1])
        d = DiracOperator.constant(sig, [1, 1])
        u = parse_expr("x1 - x0*e1", sig)
        assert apply_dirac_conj(d, u) == parse_expr("-2*e1", sig)

    def test_constant_maps_to_zero(self):
        sig = Signature.classical(2)
        d = DiracOperator.constant(sig, [1, 1, 1])
        assert apply_dirac_conj(d, PolyField.blade(sig, 3)).is_zero

    def test_sum_with_dirac(self):
        rng = random.Random(41)
        for _ in range(30):
            sig = random_signature(rng, rng.randint(1, 3))
            d = random_dirac(rng, sig)
            u = random_polyfield(rng, sig)
            lhs = apply_dirac(d, u) + apply_dirac_conj(d, u)
            assert lhs == 2 * (d.lam(0) * u.partial(0))


class TestApplyEvolution:
    def test_time_translation(self):
        sig = Signature.classical(1)
        f = EvolutionOperator(sig, (PolyField.scalar(sig, 1), PolyField.zero(sig)))
        u = parse_expr("x0^2 + x1*e1", sig)
        assert apply_evolution(f, u) == parse_expr("2*x0", sig)

    def test_zero_operator(self):
        sig = Signature.classical(1)
        f = EvolutionOperator.zero(sig)
        assert apply_evolution(f, parse_expr("x0*x1", sig)).is_zero

    def test_left_multiplication(self):
        sig = Signature.classical(1)
        f = EvolutionOperator(sig, (PolyField.zero(sig), parse_expr("x0", sig)))
        u = parse_expr("x1 - x0*e1", sig)
        assert apply_evolution(f, u) == parse_expr("x0", sig)


class TestProductFormula:
    def test_constant_right_factor(self):
        rng = random.Random(42)
        sig = random_signature(rng, 2)
        d = random_dirac(rng, sig)
        u = random_polyfield(rng, sig)
        v = PolyField.constant(sig, Multivector(sig, {0: Fraction(2), 3: Fraction(-1)}))
        assert dirac_product(d, u, v) == apply_dirac(d, u) * v

    def test_real_left_factor_splits(self):
        rng = random.Random(43)
        sig = random_signature(rng, 2)
        d = random_dirac(rng, sig)
        u = random_polyfield(rng, sig, real=True)
        v = random_polyfield(rng, sig)
        assert dirac_product(d, u, v) == apply_dirac(d, u) * v + u * apply_dirac(d, v)

    def test_matches_direct_application(self):
        rng = random.Random(44)
        for _ in range(60):
            sig = random_signature(rng, rng.randint(1, 3))
            d = random_dirac(rng, sig)
            u = random_polyfield(rng, sig)
            v = random_polyfield(rng, sig)
            assert dirac_product(d, u, v) == apply_dirac(d, u * v)


def n2_product_expansion(d, u, v):
    """Independent n=2 expansion with explicit commutator correction terms."""
    sig = d.sig
    g = sig.gamma_at(1, 2)
    a1, a2 = sig.alpha_at(1), sig.alpha_at(2)
    e1 = PolyField.blade(sig, 1)
    e2 = PolyField.blade(sig, 2)
    e12 = PolyField.blade(sig, 3)
    u1, u2, u12 = u.component(1), u.component(2), u.component(3)
    bracket1 = (-g * u2) + (-g * u12) * e1 + (-a1 * u12) * e2 + u2 * e12
    bracket2 = (g * u1) + (a2 * u12) * e1 + (g * u12) * e2 + (-u1) * e12
    return (
        apply_dirac(d, u) * v
        + u * apply_dirac(d, v)
        + 2 * (d.lam(1) * (bracket1 * v.partial(1)))
        + 2 * (d.lam(2) * (bracket2 * v.partial(2)))
    )


class TestN2Specialization:
    def test_commutator_identities_basis_and_random(self):
        rng = random.Random(45)
        sig = random_signature(rng, 2)
        g = sig.gamma_at(1, 2)
        a1, a2 = sig.alpha_at(1), sig.alpha_at(2)
        e1 = PolyField.blade(sig, 1)
        e2 = PolyField.blade(sig, 2)
        e12 = PolyField.blade(sig, 3)
        fields = [PolyField.blade(sig, m) for m in range(sig.dim)]
        fields += [random_polyfield(rng, sig) for _ in range(100)]
        for u in fields:
            u1, u2, u12 = u.component(1), u.component(2), u.component(3)
            shift1 = 2 * ((-g * u2) + (-g * u12) * e1 + (-a1 * u12) * e2 + u2 * e12)
            shift2 = 2 * ((g * u1) + (a2 * u12) * e1 + (g * u12) * e2 + (-u1) * e12)
            assert blade_commutator_shift(sig, 1, u) == shift1
            assert blade_commutator_shift(sig, 2, u) == shift2

    def test_expansion_equals_general_formula(self):
        rng = random.Random(46)
        for _ in range(50):
            sig = random_signature(rng, 2)
            d = random_dirac(rng, sig)
            u = random_polyfield(rng, sig)
            v = random_polyfield(rng, sig)
            expanded = n2_product_expansion(d, u, v)
            assert expanded == dirac_product(d, u, v)
            assert expanded == apply_dirac(d, u * v)


class TestSecondOrder:
    def test_laplacian_of_x0_squared(self):
        sig = Signature.classical(1)
        d = DiracOperator.constant(sig, [1, 1])
        assert second_order(d, parse_expr("x0^2", sig)) == PolyField.scalar(sig, 2)

    def test_harmonic_polynomial(self):
        sig = Signature.classical(1)
        d = DiracOperator.constant(sig, [1, 1])
        assert second_order(d, parse_expr("x0^2 - x1^2", sig)).is_zero

    def test_composition_matches_expansion(self):
        rng = random.Random(47)
        for _ in range(60):
            sig = random_signature(rng, rng.randint(1, 3))
            d = random_dirac(rng, sig)
            u = random_polyfield(rng, sig, degree=3)
            assert second_order(d, u) == second_order_expanded(d, u)


class TestMonogenicPropagation:
    def test_derivative_identity_cleared(self):
        # lambda_0^2 D(d_k u) + lambda_0 sum_j db(k,j) e_j d_j u = 0
        # for monogenic u, db(k,j) = lambda_0 d_k lambda_j - lambda_j d_k lambda_0
        from cliffta.associated import monogenic_basis

        rng = random.Random(48)
        for _ in range(5):
            n = rng.randint(1, 2)
            sig = random_signature(rng, n)
            lambdas = [PolyField.scalar(sig, 1)]
            for j in range(1, n + 1):
                lambdas.append(
                    PolyField.scalar(sig, rng.randint(1, 2))
                    + PolyField.variable(sig, 0).scale(rng.randint(0, 1))
                )
            d = DiracOperator(sig, tuple(lambdas))
            lam0 = d.lam(0)
            for u in monogenic_basis(d, 2):
                for k in range(n + 1):
                    lhs = lam0 * (lam0 * apply_dirac(d, u.partial(k)))
                    for j in range(1, n + 1):
                        db = lam0 * d.lam(j).partial(k) - d.lam(j) * lam0.partial(k)
                        ej = PolyField.blade(sig, 1 << (j - 1))
                        lhs = lhs + lam0 * (db * (ej * u.partial(j)))
                    assert lhs.is_zero


class TestEllipticity:
    def test_classical_laplacian(self):
        sig = Signature.classical(2)
        v = ellipticity_check(DiracOperator.constant(sig, [1, 1, 1]))
        assert v.definite and v.c1_satisfied and v.c2_applicable_and_satisfied

    def test_negative_alpha(self):
        sig = Signature.create(2, [-1, 1])
        v = ellipticity_check(DiracOperator.constant(sig, [1, 1, 1]))
        assert not v.definite
        assert not v.c1_satisfied

    def test_large_gamma(self):
        sig = Signature.create(2, [1, 1], {(1, 2): 2})
        v = ellipticity_check(DiracOperator.constant(sig, [1, 1, 1]))
        assert not v.definite
        # third leading minor of [[1,0,0],[0,1,-2],[0,-2,1]] is negative
        from cliffta.ratlinalg import det

        assert det(v.symbol.submatrix(3, 3)) < 0

    def test_definite_implies_positive_minors(self):
        from cliffta.ratlinalg import det

        rng = random.Random(49)
        for _ in range(30):
            sig = random_signature(rng, rng.randint(1, 3))
            lam = [rng.randint(-2, 2) for _ in range(sig.n + 1)]
            if lam[0] == 0:
                lam[0] = 1
            v = ellipticity_check(DiracOperator.constant(sig, lam))
            minors = [det(v.symbol.submatrix(k, k)) for k in range(1, sig.n + 2)]
            assert v.definite == all(m > 0 for m in minors)

    def test_gamma_zero_iff_alpha_positive(self):
        rng = random.Random(50)
        for _ in range(40):
            n = rng.randint(1, 3)
            alpha = [Fraction(rng.choice([-2, -1, 1, 2])) for _ in range(n)]
            sig = Signature.create(n, alpha)
            lam = [rng.choice([-2, -1, 1, 2]) for _ in range(n + 1)]
            v = ellipticity_check(DiracOperator.constant(sig, lam))
            assert v.definite == all(a > 0 for a in alpha)
            assert v.c2_applicable_and_satisfied == all(a > 0 for a in alpha)

    def test_variable_lambda_rejected(self):
        sig = Signature.classical(1)
        d = DiracOperator(sig, (PolyField.scalar(sig, 1), PolyField.variable(sig, 0)))
        with pytest.raises(NonConstantCoefficients):
            ellipticity_check(d)
