from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from diophlab.polyapprox import (IntPolynomial, MonomialOrder, PolyRelation,
                                 algebraic_dependence, ideal_containment,
                                 minimal_polynomial, poly_error)
from diophlab.oracles import (PHI, ConstOracle, MinpolyOracle, ProductOracle,
                              RationalOracle, SurdOracle)

SQRT2 = SurdOracle(0, 1, 1, 2)


def uni(coeffs):
    return IntPolynomial.from_univariate(coeffs)


class TestIntPolynomial:
    def test_normalized_primitive_positive(self):
        p = uni([-4, 0, -2])  # -2x^2 - 4
        n = p.normalized()
        assert n.univariate_coeffs() == [2, 0, 1]

    def test_arithmetic(self):
        p, q = uni([1, 1]), uni([-1, 1])
        assert (p * q).univariate_coeffs() == [-1, 0, 1]
        assert (p + q).univariate_coeffs() == [0, 2]

    def test_evaluate_exact(self):
        p = uni([-2, 0, 1])
        assert p.evaluate([Fraction(141, 100)]) == Fraction(-119, 10000)

    def test_monomial_order_prefers_later_variables(self):
        # within a total degree, the later variable ranks higher
        assert MonomialOrder.key((1, 0)) < MonomialOrder.key((0, 1))
        assert MonomialOrder.key((0, 1)) < MonomialOrder.key((2, 0))

    def test_leading_term(self):
        p = IntPolynomial(2, {(2, 0): 1, (0, 1): -3})
        exps, c = p.leading_term()
        assert exps == (2, 0) and c == 1

    def test_str_roundtrip_sympy(self):
        p = IntPolynomial(2, {(1, 1): 2, (0, 0): -7})
        x, y = sympy.symbols("x y")
        assert sympy.expand(p.to_sympy([x, y]) - (2 * x * y - 7)) == 0


class TestMinimalPolynomial:
    def test_sqrt2(self):
        rel = minimal_polynomial(SQRT2, 4)
        assert rel.found
        assert rel.polynomial.univariate_coeffs() == [-2, 0, 1]
        assert rel.certificate.status == "ExactVerified"

    def test_phi(self):
        rel = minimal_polynomial(PHI, 4)
        assert rel.polynomial.univariate_coeffs() == [-1, -1, 1]

    def test_rational(self):
        rel = minimal_polynomial(RationalOracle(Fraction(3, 7)), 4)
        assert rel.polynomial.univariate_coeffs() == [-3, 7]

    def test_cube_root_degree_three(self):
        o = MinpolyOracle([-2, 0, 0, 1], Fraction(1), Fraction(2))
        rel = minimal_polynomial(o, 4)
        assert rel.polynomial.univariate_coeffs() == [-2, 0, 0, 1]

    def test_pi_none_up_to(self):
        rel = minimal_polynomial(ConstOracle("pi"), 3, hmax=50)
        assert not rel.found
        assert rel.certificate.status == "NoneUpTo"

    def test_degree_minimality_quartic(self):
        # x^4 - 10x^2 + 1 is the minimal polynomial of sqrt2 + sqrt3
        o = MinpolyOracle([1, 0, -10, 0, 1], Fraction(3), Fraction(4))
        rel = minimal_polynomial(o, 6)
        assert rel.polynomial.univariate_coeffs() == [1, 0, -10, 0, 1]


class TestAlgebraicDependence:
    def test_sqrt2_sqrt8(self):
        rel = algebraic_dependence([SQRT2, SurdOracle(0, 2, 1, 2)], 2)
        assert rel.found
        # reported relation is X2 - 2 X1 under the graded order
        assert rel.polynomial.coeffs == {(0, 1): 1, (1, 0): -2}

    def test_pi_pi_squared(self):
        rel = algebraic_dependence(
            [ConstOracle("pi"), ProductOracle([ConstOracle("pi")], [2])], 3)
        assert rel.found
        assert rel.polynomial.coeffs == {(2, 0): 1, (0, 1): -1}

    def test_pi_e_not_detected(self):
        rel = algebraic_dependence([ConstOracle("pi"), ConstOracle("e")], 2,
                                   hmax=40)
        assert not rel.found

    def test_single_algebraic(self):
        rel = algebraic_dependence([SQRT2], 2)
        assert rel.found
        assert rel.polynomial.coeffs == {(2,): 1, (0,): -2}


class TestIdealContainment:
    def test_multiples_divide(self):
        minpoly = uni([-2, 0, 1])
        found = [minpoly, minpoly * uni([1, 1]), minpoly * uni([0, 0, 3])]
        rep = ideal_containment(found, minpoly)
        assert rep.all_divisible
        assert [q is not None for q in rep.quotients] == [True] * 3

    def test_nonmultiple_flagged(self):
        rep = ideal_containment([uni([-1, 0, 1])], uni([-2, 0, 1]))
        assert not rep.all_divisible
        assert rep.quotients[0] is None


class TestPolyError:
    def test_exact_zero(self):
        iv = poly_error([SQRT2], uni([-2, 0, 1]))
        assert iv.contains_zero()
        assert iv.width < Fraction(1, 2 ** 64)

    def test_rational_point(self):
        iv = poly_error([RationalOracle(Fraction(1, 2))], uni([0, 2]))
        assert iv.is_point and iv.lo == 1
