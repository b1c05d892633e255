import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chebconvex.core import (
    ConstFn,
    ExpFn,
    Interval,
    PowerFn,
    affine,
    evaluate,
)
from chebconvex.divdiff import (
    classical_divided_difference,
    complete_homogeneous,
    divided_difference,
    power_divdiff_check,
    power_divdiff_expansion,
)
from chebconvex.errors import (
    DimensionMismatch,
    InputError,
    SingularDenominator,
)
from chebconvex.systems import one_xsq_system, polynomial_system, trig_odd_system

from oracles import (
    homogeneous_by_enumeration,
    rand_distinct_fractions,
    rand_increasing_floats,
    recursive_divdiff,
)


class TestGeneralizedDivdiff:
    def test_poly_prefix_slope(self):
        system = polynomial_system(3)
        dd = divided_difference(system, 2, PowerFn(2), (1, 2))
        assert dd.value == 3
        assert dd.numerator == 3 and dd.denominator == 1
        assert dd.order == 1

    def test_last_basis_function_gives_one(self):
        poly = polynomial_system(4)
        dd = divided_difference(poly, 3, poly.basis[2], (0, 2, 5))
        assert dd.value == 1
        trig = trig_odd_system(1, -math.pi, 0.0)
        dd = divided_difference(trig, 3, trig.basis[2], (-2.5, -1.5, -0.5))
        assert dd.value == pytest.approx(1.0, rel=1e-12)

    def test_earlier_basis_function_gives_zero(self):
        poly = polynomial_system(4)
        for j in range(3):
            dd = divided_difference(poly, 4, poly.basis[j], (0, 1, 2, 3))
            assert dd.value == 0

    def test_value_times_denominator_is_numerator(self):
        rng = random.Random(21)
        system = polynomial_system(5)
        for _ in range(20):
            k = rng.randint(1, 5)
            pts = rand_distinct_fractions(rng, k)
            dd = divided_difference(system, k, PowerFn(k + 1), pts)
            assert dd.value * dd.denominator == dd.numerator

    def test_accepts_unsorted_points(self):
        system = polynomial_system(3)
        a = divided_difference(system, 3, PowerFn(4), (3, 1, 2)).value
        b = divided_difference(system, 3, PowerFn(4), (1, 2, 3)).value
        assert a == b

    def test_singular_denominator(self):
        wide = one_xsq_system(Interval(), allow_unsafe_domain=True)
        with pytest.raises(SingularDenominator):
            divided_difference(wide, 2, PowerFn(3), (-1, 1))

    def test_dimension_checks(self):
        system = polynomial_system(3)
        with pytest.raises(DimensionMismatch):
            divided_difference(system, 4, PowerFn(1), (1, 2, 3, 4))
        with pytest.raises(DimensionMismatch):
            divided_difference(system, 2, PowerFn(1), (1, 2, 3))


class TestClassicalDivdiff:
    def test_cubic_example(self):
        assert classical_divided_difference(PowerFn(3), (1, 2, 3)) == 6

    def test_constants_annihilated(self):
        assert classical_divided_difference(PowerFn(0), (1, 5)) == 0
        assert classical_divided_difference(ConstFn(Fraction(9)), (1, 2, 7, 8)) == 0

    def test_leading_coefficient(self):
        for k in range(1, 6):
            pts = tuple(range(k + 1))
            assert classical_divided_difference(PowerFn(k), pts) == 1

    def test_matches_recursive_oracle(self):
        rng = random.Random(22)
        f = affine((Fraction(2), PowerFn(3)), (Fraction(-1, 2), PowerFn(1)))
        for _ in range(25):
            m = rng.randint(1, 6)
            pts = rand_distinct_fractions(rng, m)
            want = recursive_divdiff(lambda x: evaluate(f, x), pts)
            assert classical_divided_difference(f, pts) == want

    def test_symmetry_all_permutations(self):
        pts = (Fraction(0), Fraction(1, 2), Fraction(2), Fraction(7, 3))
        base = classical_divided_difference(PowerFn(5), pts)
        for perm in itertools.permutations(pts):
            assert classical_divided_difference(PowerFn(5), perm) == base

    def test_single_point_is_value(self):
        assert classical_divided_difference(PowerFn(2), (Fraction(3, 2),)) == Fraction(9, 4)


class TestPolySystemAgreement:
    def test_exact_agreement_up_to_six(self):
        rng = random.Random(23)
        f = affine((Fraction(1), PowerFn(6)), (Fraction(3), PowerFn(2)))
        for k in range(1, 7):
            system = polynomial_system(k)
            for _ in range(10):
                pts = rand_distinct_fractions(rng, k)
                got = divided_difference(system, k, f, pts).value
                want = classical_divided_difference(f, pts)
                assert got == want

    def test_float_agreement(self):
        rng = random.Random(24)
        f = ExpFn()
        for k in range(1, 7):
            system = polynomial_system(k)
            for _ in range(10):
                pts = rand_increasing_floats(rng, k, -1.0, 1.0, 0.05)
                got = divided_difference(system, k, f, pts).value
                want = classical_divided_difference(f, pts)
                assert got == pytest.approx(want, rel=1e-9, abs=1e-12)

    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_linearity(self, data):
        rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
        k = data.draw(st.integers(2, 5))
        a = Fraction(data.draw(st.integers(-9, 9)))
        b = Fraction(data.draw(st.integers(-9, 9)))
        system = polynomial_system(k)
        pts = rand_distinct_fractions(rng, k)
        f, g = PowerFn(k), PowerFn(k + 1)
        combo = affine((a, f), (b, g))
        lhs = divided_difference(system, k, combo, pts).value
        rhs = a * divided_difference(system, k, f, pts).value \
            + b * divided_difference(system, k, g, pts).value
        assert lhs == rhs

    def test_trig_annihilation(self):
        trig = trig_odd_system(1, -math.pi, 0.0)
        pts = (-2.9, -1.7, -0.4)
        assert divided_difference(trig, 3, trig.basis[0], pts).value == pytest.approx(0.0, abs=1e-12)
        assert divided_difference(trig, 3, trig.basis[1], pts).value == pytest.approx(0.0, abs=1e-12)


class TestCompleteHomogeneous:
    def test_degree_zero_is_one(self):
        assert complete_homogeneous(0, (5, 7, 11)) == 1

    def test_degree_one_is_sum(self):
        assert complete_homogeneous(1, (1, 2, 3)) == 6

    def test_degree_two_pair(self):
        assert complete_homogeneous(2, (1, 2)) == 7

    def test_matches_enumeration_oracle(self):
        rng = random.Random(25)
        for _ in range(30):
            k = rng.randint(1, 5)
            degree = rng.randint(0, 6)
            pts = rand_distinct_fractions(rng, k)
            assert complete_homogeneous(degree, pts) == \
                homogeneous_by_enumeration(degree, pts)

    def test_empty_points_rejected(self):
        with pytest.raises(InputError):
            complete_homogeneous(2, ())

    def test_negative_degree_rejected(self):
        with pytest.raises(InputError):
            complete_homogeneous(-1, (1,))


class TestPowerIdentity:
    def test_cubic_at_123(self):
        rep = power_divdiff_check(3, (1, 2, 3))
        assert rep.lhs == 6 and rep.rhs == 6 and rep.residual == 0

    def test_leading_case_both_one(self):
        # degree = k - 1: the complete homogeneous factor has degree 0
        rep = power_divdiff_check(4, (0, 1, 2, 3, 4))
        assert rep.lhs == 1 and rep.rhs == 1 and rep.residual == 0

    def test_random_rational_zero_residual(self):
        rng = random.Random(26)
        for _ in range(60):
            degree = rng.randint(0, 8)
            k = rng.randint(1, min(6, degree + 1))
            pts = rand_distinct_fractions(rng, k)
            assert power_divdiff_check(degree, pts).residual == 0

    def test_too_many_points_rejected(self):
        with pytest.raises(DimensionMismatch):
            power_divdiff_check(2, (1, 2, 3, 4))


class TestPowerExpansion:
    def test_degree_equals_base_size(self):
        assert power_divdiff_expansion((1, 2), 2, 5) == 1

    def test_pair_example(self):
        got = power_divdiff_expansion((1, 2), 3, 4)
        assert got == 7
        assert classical_divided_difference(PowerFn(3), (1, 2, 4)) == 7

    def test_matches_classical_oracle(self):
        base = (Fraction(0), Fraction(1, 2))
        got = power_divdiff_expansion(base, 4, Fraction(1))
        want = classical_divided_difference(PowerFn(4), base + (Fraction(1),))
        assert got == want

    def test_random_agreement(self):
        rng = random.Random(27)
        for _ in range(40):
            k = rng.randint(1, 4)
            degree = rng.randint(k, k + 4)
            pts = rand_distinct_fractions(rng, k + 1)
            base, x = pts[:k], pts[k]
            got = power_divdiff_expansion(base, degree, x)
            want = classical_divided_difference(PowerFn(degree), base + (x,))
            assert got == want

    def test_duplicate_extra_point_rejected(self):
        with pytest.raises(InputError):
            power_divdiff_expansion((1, 2), 3, 2)

    def test_degree_below_base_rejected(self):
        with pytest.raises(DimensionMismatch):
            power_divdiff_expansion((1, 2, 3), 2, 9)
