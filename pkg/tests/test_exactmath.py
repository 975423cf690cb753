"""Exact arithmetic core: m-polynomials, bivariate polynomials, the quadratic
field, generalized binomials, and the rank-n transform."""

import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catwb.errors import DegreeError
from catwb.exactmath import (
    GOLDEN,
    M,
    MPoly,
    MUniPoly,
    QuadExt,
    SQRT5,
    binom_int,
    gen_binomial,
    substitute_fm,
)


class TestMUniPoly:
    def test_construction_trims_zeros(self):
        assert MUniPoly((1, 2, 0, 0)).coeffs == (Fraction(1), Fraction(2))
        assert not MUniPoly((0, 0))
        assert MUniPoly().degree == -1

    def test_arithmetic(self):
        p = (M + 1) * (M - 1)
        assert p == M * M - 1
        assert p.eval(3) == 8
        assert (M * 2 + 1) - (M + 1) == M

    def test_eval_horner(self):
        p = 3 * M**2 + Fraction(1, 2) * M + 5
        assert p.eval(Fraction(1, 3)) == Fraction(1, 3) + Fraction(1, 6) + 5

    def test_format(self):
        assert str(2 * M**2 - M) == "2*m^2 - m"
        assert str(MUniPoly()) == "0"


class TestGenBinomial:
    def test_integer_cases(self):
        assert gen_binomial(5, 2) == 10
        assert gen_binomial(5, -1) == 0
        assert gen_binomial(-1, 2) == 1  # (-1)(-2)/2!

    def test_negative_k_is_zero_for_any_n(self):
        assert gen_binomial(M * 7 + 3, -1) == MUniPoly()
        assert gen_binomial(Fraction(9, 2), -4) == 0

    def test_single_factor(self):
        assert gen_binomial(2 * M, 1) == 2 * M

    @given(st.integers(0, 30), st.integers(0, 30))
    def test_matches_factorial_ratio(self, n, k):
        assert gen_binomial(n, k) == (math.comb(n, k) if k <= n else 0)

    def test_matches_factorial_ratio_exhaustive(self):
        for n in range(31):
            for k in range(n + 1):
                assert gen_binomial(n, k) == math.comb(n, k)

    @given(st.integers(-8, 8), st.integers(0, 8))
    def test_polynomial_specializes(self, v, k):
        poly = gen_binomial(3 * M + 1, k)
        assert poly.eval(v) == gen_binomial(3 * v + 1, k)

    def test_binom_int(self):
        assert binom_int(7, 3) == 35
        assert binom_int(-1, 3) == -1


class TestQuadExt:
    def test_field_axioms_spot(self):
        x = QuadExt.of(Fraction(2, 3), Fraction(-1, 2))
        y = QuadExt.of(1, 4)
        assert (x * y) / y == x
        assert x + (-x) == QuadExt.of(0)

    def test_golden_ratio(self):
        assert GOLDEN * GOLDEN == GOLDEN + 1
        assert SQRT5 * SQRT5 == QuadExt.of(5)

    def test_ordering(self):
        assert SQRT5 > 2
        assert SQRT5 < Fraction(9, 4)
        assert QuadExt.of(1, -1) < 0  # 1 - sqrt5 < 0
        assert sorted([GOLDEN, QuadExt.of(1), QuadExt.of(2)])[1] == GOLDEN

    def test_hash_consistency_with_rationals(self):
        assert hash(QuadExt.of(3)) == hash(Fraction(3))
        assert QuadExt.of(3) == 3


def random_mpoly(rng, max_deg=3, max_mdeg=2):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        k, l = rng.randint(0, max_deg), rng.randint(0, max_deg)
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(max_mdeg + 1)]
        terms[(k, l)] = MUniPoly(coeffs)
    return MPoly(terms)


class TestMPoly:
    def test_basic_identities(self):
        x, y = MPoly.x(), MPoly.y()
        p = (x + y) * (x - y)
        assert p == x * x - y * y
        assert (x + 1) ** 2 == x * x + 2 * x + 1

    def test_ring_axioms_random_triples(self):
        rng = random.Random(20240811)
        for _ in range(100):
            a, b, c = (random_mpoly(rng) for _ in range(3))
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a
            # spot-evaluate at integer points
            for mv, xv, yv in [(1, 2, 3), (2, -1, 1)]:
                lhs = (a * b + c).eval_m(mv).eval_xy(xv, yv)
                rhs = a.eval_m(mv).eval_xy(xv, yv) * b.eval_m(mv).eval_xy(xv, yv) + c.eval_m(
                    mv
                ).eval_xy(xv, yv)
                assert lhs == rhs

    def test_diff_y(self):
        x, y = MPoly.x(), MPoly.y()
        p = x * y**3 + 2 * y + 5
        assert p.diff_y() == 3 * x * y**2 + 2

    def test_eval_m(self):
        p = MPoly({(1, 0): M, (0, 1): MUniPoly.const(1), (0, 0): MUniPoly.const(1)})
        assert p.eval_m(2) == MPoly({(1, 0): MUniPoly.const(2), (0, 1): MUniPoly.const(1), (0, 0): MUniPoly.const(1)})
        # m = 0 drops every m-divisible term
        assert (MPoly.term(1, 0, M) + 1).eval_m(0) == MPoly.const(1)

    def test_set_diagonal(self):
        x, y = MPoly.x(), MPoly.y()
        p = x * y + x**2 + y**2
        assert p.set_diagonal() == 3 * MPoly.term(2, 0)

    def test_poly_eval_m_on_dihedral_display(self):
        from catwb.exactmath import poly_eval_m
        from catwb.ftriangle import f_i2

        x, y = MPoly.x(), MPoly.y()
        out = poly_eval_m(f_i2(3), 1)
        assert out == 2 * x**2 + 2 * x * y + 3 * x + y**2 + 2 * y + 1

    def test_latex_format(self):
        p = MPoly({(3, 0): Fraction(25, 3) * M, (1, 1): MUniPoly.const(1)})
        assert p.format(latex=True) == "\\frac{25}{3} m x^{3} + xy"

    def test_serialization_roundtrip_bit_exact(self):
        rng = random.Random(7)
        for _ in range(25):
            p = random_mpoly(rng)
            s = p.dumps()
            q = MPoly.loads(s)
            assert q == p
            assert q.dumps() == s

    def test_serialization_schema(self):
        import jsonschema
        from pathlib import Path

        schema = json.loads(
            (Path(__file__).parent.parent / "src/catwb/schemas/mpoly.schema.json").read_text()
        )
        p = MPoly({(1, 2): M * 2 + Fraction(1, 3)})
        jsonschema.validate(p.to_json_obj(), schema)


class TestSubstituteFm:
    def test_rank_one(self):
        F = MPoly({(1, 0): M, (0, 1): MUniPoly.const(1), (0, 0): MUniPoly.const(1)})
        out = substitute_fm(F, 1)
        expected = MPoly({(1, 1): M, (1, 0): M, (0, 0): MUniPoly.const(1)})
        assert out == expected

    def test_constant(self):
        assert substitute_fm(MPoly.const(1), 0) == MPoly.const(1)

    def test_degree_error(self):
        with pytest.raises(DegreeError):
            substitute_fm(MPoly.term(2, 1), 2)

    def test_multiplicative_across_rank_split(self):
        rng = random.Random(99)
        for _ in range(20):
            f = random_mpoly(rng, max_deg=1)
            g = random_mpoly(rng, max_deg=1)
            n1 = f.total_degree + rng.randint(0, 1)
            n2 = g.total_degree + rng.randint(0, 1)
            lhs = substitute_fm(f * g, n1 + n2)
            rhs = substitute_fm(f, n1) * substitute_fm(g, n2)
            assert lhs == rhs

    def test_linear_in_the_triangle(self):
        rng = random.Random(123)
        for _ in range(20):
            f = random_mpoly(rng, max_deg=2)
            g = random_mpoly(rng, max_deg=2)
            n = max(f.total_degree, g.total_degree, 0)
            assert substitute_fm(f + g, n) == substitute_fm(f, n) + substitute_fm(g, n)
