from fractions import Fraction

import pytest
import sympy

from diophlab.errors import WrongInstanceShape
from diophlab.rigidity import (ad_check, conjecture_harness, graph_pullback,
                               ld_check, ld_to_ad_certificate)
from diophlab.oracles import (PHI, ConstOracle, ProductOracle, RationalOracle,
                              SurdOracle, exp_of)

SQRT2 = SurdOracle(0, 1, 1, 2)
LOG2 = ConstOracle("log", Fraction(2))
LOG3 = ConstOracle("log", Fraction(3))
LOG6 = ConstOracle("log", Fraction(6))


class TestLDCheck:
    def test_multiplicative_relation(self):
        v = ld_check([LOG2, LOG3, LOG6])
        assert v.holds
        assert v.certificate.vector in [[1, 1, -1], [-1, -1, 1]]

    def test_independent_logs(self):
        v = ld_check([LOG2, LOG3], fld="Q")
        assert not v.holds
        assert v.status == "NotDetectedUpTo"

    def test_quadratic_coefficients(self):
        # 1 and sqrt2 are dependent over Q(sqrt 2): 1*sqrt2 - sqrt2*1 = 0
        v = ld_check([RationalOracle(1), SQRT2], fld="Q(sqrt 2)")
        assert v.holds
        assert v.relation == "LD(Q(sqrt 2))"

    def test_quadratic_no_relation(self):
        v = ld_check([LOG2, LOG3], fld="Q(sqrt 2)")
        assert not v.holds


class TestADCheck:
    def test_exact_algebraic(self):
        v = ad_check([SQRT2, ConstOracle("pi")])
        assert v.holds
        # the witness is the lift of x^2 - 2 into the first slot
        assert v.certificate.polynomial.coeffs == {(2, 0): 1, (0, 0): -2}

    def test_exp_relation(self):
        e1 = ConstOracle("e")
        e2 = ProductOracle([e1], [2])
        v = ad_check([e1, e2])
        assert v.holds

    def test_no_relation(self):
        v = ad_check([ConstOracle("pi"), ConstOracle("e")], dmax=2, hmax=40)
        assert not v.holds


class TestGraphPullback:
    def test_algebraic_pair_holds(self):
        rep = graph_pullback([SQRT2, SurdOracle(0, 2, 1, 2)])
        assert rep.holds

    def test_transcendental_pair_not_detected(self):
        rep = graph_pullback([ConstOracle("pi"), ConstOracle("e")],
                             dmax=2, hmax=30)
        assert not rep.holds

    def test_too_many_variables(self):
        with pytest.raises(ValueError):
            graph_pullback([SQRT2] * 5)


class TestLDToAD:
    def test_certificate_shape(self):
        # c = (1, 1, -1): X1*X2 - X3 annihilates (e^t1, e^t2, e^t3)
        p = ld_to_ad_certificate([1, 1, -1])
        x1, x2, x3 = sympy.symbols("x1 x2 x3")
        assert sympy.expand(p.to_sympy([x1, x2, x3]) - (x1 * x2 - x3)) == 0

    def test_certificate_verifies_on_exponentials(self):
        # log2 + log3 - log6 = 0, so the monomial relation holds at
        # (2, 3, 6) exactly
        p = ld_to_ad_certificate([1, 1, -1])
        assert p.evaluate([Fraction(2), Fraction(3), Fraction(6)]) == 0

    def test_negative_exponents_split(self):
        p = ld_to_ad_certificate([2, -1])
        # X1^2 - X2 at (x, x^2) vanishes
        assert p.evaluate([Fraction(3), Fraction(9)]) == 0


class TestHarnesses:
    def test_baker_vacuous_on_relation(self):
        # a Q-linear relation falsifies the independence premise
        rep = conjecture_harness("baker", [LOG2, LOG3, LOG6])
        assert rep.verdict == "VacuouslyConsistent"

    def test_baker_consistent_on_independents(self):
        rep = conjecture_harness("baker", [LOG2, LOG3])
        assert rep.verdict == "Consistent"

    def test_baker_requires_logs(self):
        with pytest.raises(WrongInstanceShape):
            conjecture_harness("baker", [ConstOracle("pi")])

    def test_lw_requires_algebraic(self):
        with pytest.raises(WrongInstanceShape):
            conjecture_harness("lw", [ConstOracle("pi")])

    def test_lw_on_algebraics(self):
        rep = conjecture_harness("lw", [RationalOracle(1), SQRT2])
        assert rep.verdict in ("Consistent", "VacuouslyConsistent")

    def test_schanuel_on_logs(self):
        rep = conjecture_harness("schanuel", [LOG2, LOG3, LOG6])
        assert rep.verdict in ("Consistent", "VacuouslyConsistent")
        assert rep.verdict != "COUNTEREXAMPLE-CANDIDATE"

    def test_logconj_no_candidate_on_clean_instance(self):
        rep = conjecture_harness("logconj", [LOG2, LOG3])
        assert rep.verdict != "COUNTEREXAMPLE-CANDIDATE"

    def test_unknown_harness(self):
        with pytest.raises(ValueError):
            conjecture_harness("fermat", [LOG2])
