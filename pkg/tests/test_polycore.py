import random
from fractions import Fraction

import pytest

from unitycert.polycore import (
    ChebKind,
    MPoly,
    UPoly,
    bernstein,
    cheb,
    cheb_orthonormal_square,
    monomials_upto,
    poly_eval,
    simplex_generator_power,
)


def upoly(*coeffs):
    return UPoly.from_coeffs(coeffs)


class TestCheb:
    def test_base_cases(self):
        assert cheb(ChebKind.FIRST, 0) == upoly(1)
        assert cheb(ChebKind.FIRST, 1) == upoly(0, 1)
        assert cheb(ChebKind.SECOND, 0) == upoly(1)
        assert cheb(ChebKind.SECOND, 1) == upoly(0, 2)

    def test_recurrence_examples(self):
        assert cheb(ChebKind.FIRST, 2) == upoly(-1, 0, 2)
        assert cheb(ChebKind.SECOND, 2) == upoly(-1, 0, 4)
        assert cheb(ChebKind.FIRST, 3) == upoly(0, -3, 0, 4)

    def test_degree_and_integer_coefficients(self):
        for n in range(12):
            for kind in ChebKind:
                p = cheb(kind, n)
                assert p.degree == n
                assert all(c.denominator == 1 for c in p.coeffs)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            cheb(ChebKind.FIRST, -1)

    def test_pell_identity_small(self):
        g = upoly(1, 0, -1)
        for n in range(1, 9):
            t = cheb(ChebKind.FIRST, n)
            u = cheb(ChebKind.SECOND, n - 1)
            assert t * t + g * (u * u) == upoly(1)


class TestOrthonormalSquare:
    def test_examples(self):
        assert cheb_orthonormal_square(ChebKind.FIRST, 0) == upoly(1)
        assert cheb_orthonormal_square(ChebKind.FIRST, 1) == upoly(0, 0, 2)
        assert cheb_orthonormal_square(ChebKind.SECOND, 0) == upoly(2)

    def test_relation_to_plain_squares(self):
        for kind in ChebKind:
            for j in range(10):
                base = cheb(kind, j)
                factor = 1 if (kind is ChebKind.FIRST and j == 0) else 2
                assert cheb_orthonormal_square(kind, j) == base * base * factor


class TestBernstein:
    def test_examples(self):
        assert bernstein(2, 1) == upoly(0, 2, -2)
        assert bernstein(1, 0) == upoly(1, -1)

    def test_partition_of_unity(self):
        for n in range(17):
            total = UPoly.zero()
            for j in range(n + 1):
                total = total + bernstein(n, j)
            assert total == upoly(1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            bernstein(3, 4)
        with pytest.raises(ValueError):
            bernstein(3, -1)


class TestSimplexGeneratorPower:
    def test_empty_product(self):
        assert simplex_generator_power(2, (0, 0, 0)) == MPoly.constant(2, 1)

    def test_expansion(self):
        expected = MPoly.make(2, {(1, 0): 1, (2, 0): -1, (1, 1): -1})
        assert simplex_generator_power(2, (1, 0, 1)) == expected
        assert simplex_generator_power(1, (1, 1)) == MPoly.make(1, {(1,): 1, (2,): -1})

    def test_bad_alpha(self):
        with pytest.raises(ValueError):
            simplex_generator_power(2, (1, 0))
        with pytest.raises(ValueError):
            simplex_generator_power(2, (1, 0, -1))


class TestPolyEval:
    def test_univariate(self):
        assert poly_eval(upoly(-1, 0, 2), [Fraction(1, 2)]) == Fraction(-1, 2)
        assert poly_eval(UPoly.zero(), [7]) == 0

    def test_multivariate(self):
        p = simplex_generator_power(2, (1, 0, 1))
        assert poly_eval(p, [Fraction(1, 3), Fraction(1, 3)]) == Fraction(1, 9)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            poly_eval(upoly(1, 2), [1, 2])
        with pytest.raises(ValueError):
            poly_eval(MPoly.constant(2, 1), [1])


class TestRingStructure:
    def test_distributivity_univariate(self):
        rng = random.Random(7)

        def rand_poly():
            return UPoly.from_coeffs(
                Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(0, 5))
            )

        for _ in range(50):
            p, q, r = rand_poly(), rand_poly(), rand_poly()
            assert (p + q) * r == p * r + q * r
            assert p * q == q * p

    def test_distributivity_multivariate(self):
        rng = random.Random(11)

        def rand_poly():
            terms = {}
            for _ in range(rng.randint(0, 4)):
                e = (rng.randint(0, 2), rng.randint(0, 2))
                terms[e] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            return MPoly.make(2, terms)

        for _ in range(50):
            p, q, r = rand_poly(), rand_poly(), rand_poly()
            assert (p + q) * r == p * r + q * r
            assert p * q == q * p


class TestRepresentation:
    def test_zero_polynomial_conventions(self):
        z = UPoly.zero()
        assert z.degree == -1
        assert z.coeffs == ()
        assert upoly(0, 0) == z
        assert MPoly.make(2, {(1, 1): 0}) == MPoly.zero(2)

    def test_trailing_zeros_trimmed(self):
        assert upoly(1, 2, 0, 0).coeffs == (Fraction(1), Fraction(2))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            UPoly.from_coeffs([0.5])
        with pytest.raises(TypeError):
            MPoly.constant(2, 0.5)

    def test_immutable(self):
        p = upoly(1, 2)
        with pytest.raises(AttributeError):
            p.coeffs = ()


class TestMonomialOrder:
    def test_graded_lex_bivariate(self):
        assert monomials_upto(2, 2) == (
            (0, 0),
            (1, 0),
            (0, 1),
            (2, 0),
            (1, 1),
            (0, 2),
        )

    def test_univariate(self):
        assert monomials_upto(1, 3) == ((0,), (1,), (2,), (3,))

    def test_counts(self):
        import math

        for d in range(1, 5):
            for n in range(5):
                assert len(monomials_upto(d, n)) == math.comb(d + n, n)
