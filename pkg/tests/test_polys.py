import itertools
import random
from fractions import Fraction

import pytest

from gradingforge.polys import (
    cyclotomic_polynomial,
    degree,
    factor_rational,
    is_irreducible,
    poly_div_exact,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_pow,
    poly_shift,
    resultant,
    trim,
)


def refactor(constant, factors):
    out = [constant]
    for f, m in factors:
        out = poly_mul(out, poly_pow(f, m))
    return trim(out)


def bounded_height_factor_search(f, height=6):
    """Oracle: search integer factors of degree 1, 2 with small coefficients."""
    f = trim(f)
    hits = []
    for d in (1, 2):
        for coeffs in itertools.product(range(-height, height + 1), repeat=d):
            cand = list(coeffs) + [1]
            _, r = poly_divmod(f, cand)
            if not r:
                hits.append(cand)
    return hits


class TestArithmetic:
    def test_divmod(self):
        f = [1, 0, 0, 1]  # X^3 + 1
        g = [1, 1]  # X + 1
        q, r = poly_divmod(f, g)
        assert r == []
        assert trim(poly_mul(q, g)) == [Fraction(1), 0, 0, Fraction(1)]

    def test_gcd(self):
        f = poly_mul([1, 1], [-2, 1])
        g = poly_mul([1, 1], [3, 1])
        assert poly_gcd(f, g) == [Fraction(1), Fraction(1)]

    def test_shift(self):
        f = [0, 0, 1]  # X^2
        assert poly_shift(f, 1) == [1, 2, 1]

    def test_eval(self):
        assert poly_eval([1, 2, 3], 2) == 1 + 4 + 12


class TestFactorRational:
    def test_difference_of_squares(self):
        c, factors = factor_rational([-1, 0, 1])
        assert c == 1
        assert [f for f, _ in factors] == [[-1, 1], [1, 1]]

    def test_x4_plus_1_irreducible(self):
        f = [1, 0, 0, 0, 1]
        # oracle: no bounded-height factor of degree <= 2 exists
        assert bounded_height_factor_search(f) == []
        assert is_irreducible(f)

    def test_x8_minus_1_cyclotomic_factorization(self):
        c, factors = factor_rational([-1, 0, 0, 0, 0, 0, 0, 0, 1])
        assert c == 1
        polys = [f for f, _ in factors]
        assert polys == sorted(
            [[-1, 1], [1, 1], [1, 0, 1], [1, 0, 0, 0, 1]],
            key=lambda g: (len(g), g),
        )
        assert all(m == 1 for _, m in factors)

    def test_refactoring_identity(self):
        rng = random.Random(23)
        for _ in range(20):
            f = [rng.randint(-8, 8) for _ in range(rng.randint(2, 7))]
            if not trim(f) or degree(trim(f)) < 1:
                continue
            c, factors = factor_rational(f)
            assert refactor(c, factors) == [Fraction(a) for a in trim(f)]

    def test_multiplicities(self):
        f = poly_mul(poly_pow([1, 1], 3), [2, 1])
        c, factors = factor_rational(f)
        assert refactor(c, factors) == [Fraction(a) for a in trim(f)]
        mults = {tuple(g): m for g, m in factors}
        assert mults[(1, 1)] == 3
        assert mults[(2, 1)] == 1

    def test_rational_coefficients(self):
        f = [Fraction(1, 2), 0, Fraction(-1, 2)]  # (1 - X^2)/(-2)... = -1/2(X^2-1)
        c, factors = factor_rational(f)
        assert refactor(c, factors) == [Fraction(a) for a in trim(f)]

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor_rational([])

    def test_bigger_cyclotomic_product(self):
        # X^15 - 1 factors into cyclotomics of 1, 3, 5, 15
        f = [-1] + [0] * 14 + [1]
        c, factors = factor_rational(f)
        assert c == 1
        degs = sorted(degree(g) for g, _ in factors)
        assert degs == [1, 2, 4, 8]


class TestResultantCyclotomic:
    def test_resultant_of_linears(self):
        # Res(X - a, X - b) = a - b  (up to the sign convention (b - a)?)
        r = resultant([-2, 1], [-3, 1])
        # product of g over roots of f: g(2) = 2 - 3 = -1
        assert r == -1

    def test_resultant_via_roots(self):
        # Res(f, g) = lc(f)^deg g * prod g(alpha) over roots alpha of f
        f = poly_mul([-1, 1], [-2, 1])  # roots 1, 2
        g = [1, 0, 1]
        assert resultant(f, g) == poly_eval(g, 1) * poly_eval(g, 2)

    def test_resultant_swap_sign(self):
        f = [-1, 0, 1]
        g = [5, 1]
        assert resultant(f, g) == (-1) ** (degree(f) * degree(g)) * resultant(g, f)

    def test_cyclotomic_small(self):
        assert cyclotomic_polynomial(1) == [-1, 1]
        assert cyclotomic_polynomial(2) == [1, 1]
        assert cyclotomic_polynomial(4) == [1, 0, 1]
        assert cyclotomic_polynomial(8) == [1, 0, 0, 0, 1]
        assert cyclotomic_polynomial(9) == [1, 0, 0, 1, 0, 0, 1]

    def test_cyclotomic_product_identity(self):
        for n in (6, 12, 16):
            prod = [1]
            for d in range(1, n + 1):
                if n % d == 0:
                    prod = poly_mul(prod, cyclotomic_polynomial(d))
            assert trim(prod) == [-1] + [0] * (n - 1) + [1]

    def test_cyclotomic_irreducible(self):
        for n in (5, 8, 12):
            assert is_irreducible(cyclotomic_polynomial(n))
