from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diophlab.errors import PrecisionInsufficient
from diophlab.intervals import Interval


fractions = st.fractions(min_value=-100, max_value=100, max_denominator=997)


def make(lo, hi):
    return Interval(Fraction(lo), Fraction(hi))


class TestArithmetic:
    def test_add(self):
        a = make(1, 2) + make(3, 4)
        assert (a.lo, a.hi) == (4, 6)

    def test_mul_signs(self):
        a = make(-2, 3) * make(-5, 7)
        assert (a.lo, a.hi) == (-15, 21)

    def test_scalar_ops(self):
        a = make(1, 2) * Fraction(3) + 1
        assert (a.lo, a.hi) == (4, 7)

    @given(fractions, fractions, fractions, fractions)
    def test_mul_contains_products(self, a, b, c, d):
        x = Interval(min(a, b), max(a, b))
        y = Interval(min(c, d), max(c, d))
        p = x * y
        assert p.lo <= a * c <= p.hi
        assert p.lo <= b * d <= p.hi

    def test_reciprocal(self):
        r = make(2, 4).reciprocal()
        assert (r.lo, r.hi) == (Fraction(1, 4), Fraction(1, 2))

    def test_reciprocal_through_zero(self):
        with pytest.raises(PrecisionInsufficient):
            make(-1, 1).reciprocal()

    def test_square_of_mixed_sign(self):
        s = make(-2, 3).square()
        assert (s.lo, s.hi) == (0, 9)


class TestDecisions:
    def test_floor(self):
        assert make(Fraction(5, 2), Fraction(13, 5)).floor() == 2

    def test_floor_straddle(self):
        with pytest.raises(PrecisionInsufficient):
            make(Fraction(9, 10), Fraction(11, 10)).floor()

    def test_sign(self):
        assert make(1, 2).sign() == 1
        assert make(-2, -1).sign() == -1
        assert Interval.point(Fraction(0)).sign() == 0

    def test_dist_to_nearest_int_point(self):
        d = Interval.point(Fraction(7, 3)).dist_to_nearest_int()
        assert d.lo == d.hi == Fraction(1, 3)

    def test_dist_to_nearest_int_near_half(self):
        # total even when the interval straddles a half-integer
        d = make(Fraction(49, 100), Fraction(51, 100)).dist_to_nearest_int()
        assert d.hi == Fraction(1, 2)
        assert d.lo == Fraction(49, 100)

    @given(fractions, st.fractions(min_value=0, max_value=2,
                                   max_denominator=97))
    def test_dist_bounds(self, lo, width):
        iv = Interval(lo, lo + width)
        d = iv.dist_to_nearest_int()
        assert 0 <= d.lo <= d.hi <= Fraction(1, 2)
