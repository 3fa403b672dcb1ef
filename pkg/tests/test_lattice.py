from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diophlab.config import DEFAULT_CONFIG
from diophlab.errors import DependentRows
from diophlab.lattice import (LatticeBasis, hermite_normal_form,
                              integer_kernel, integer_relation,
                              is_lll_reduced, lll_reduce, right_integer_kernel,
                              simultaneous_approx, verify_relation)
from diophlab.oracles import (PHI, ConstOracle, ProductOracle, RationalOracle,
                              SurdOracle)

SQRT2 = SurdOracle(0, 1, 1, 2)


class TestLLL:
    def test_reduced_flag(self):
        b = lll_reduce(LatticeBasis([[1, 1, 1], [-1, 0, 2], [3, 5, 6]]))
        assert is_lll_reduced(b)

    def test_same_lattice(self):
        rows = [[12, 2], [13, 4]]
        red = lll_reduce(LatticeBasis(rows))
        # determinant is preserved up to sign by unimodular row operations
        d0 = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        r = red.rows
        d1 = r[0][0] * r[1][1] - r[0][1] * r[1][0]
        assert abs(d0) == abs(d1)

    @given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    def test_reduction_always_certified(self, rows):
        try:
            basis = LatticeBasis(rows)
        except (ValueError, DependentRows):
            return
        assert is_lll_reduced(lll_reduce(basis))


class TestHNF:
    def test_known_form(self):
        h = hermite_normal_form([[2, 4], [1, 3]])
        assert h == [[1, 1], [0, 2]]

    def test_zero_rows_dropped(self):
        h = hermite_normal_form([[2, 4], [1, 2]])
        assert h == [[1, 2]]


class TestKernels:
    def test_right_kernel_of_row(self):
        ker = right_integer_kernel([[1, 2, 3]])
        assert len(ker) == 2
        for v in ker:
            assert v[0] + 2 * v[1] + 3 * v[2] == 0

    def test_left_kernel_matches(self):
        rows = [[2, -1], [4, -2]]
        ker = integer_kernel(rows)
        assert len(ker) == 1
        x = ker[0]
        for j in range(2):
            assert sum(x[i] * rows[i][j] for i in range(2)) == 0

    def test_full_rank_trivial_kernel(self):
        assert integer_kernel([[1, 0], [0, 1]]) == []


class TestIntegerRelation:
    def test_phi_minimal_relation(self):
        # 1 + phi - phi^2 = 0
        cert = integer_relation(
            [RationalOracle(1), PHI, ProductOracle([PHI], [2])],
            DEFAULT_CONFIG)
        assert cert.found
        assert cert.status == "ExactVerified"
        a, b, c = cert.vector
        assert (a, b, c) in [(1, 1, -1), (-1, -1, 1)]

    def test_sqrt2_squared(self):
        cert = integer_relation(
            [RationalOracle(1), ProductOracle([SQRT2], [2])], DEFAULT_CONFIG)
        assert cert.found
        assert sorted(map(abs, cert.vector)) == [1, 2]

    def test_log_additivity(self):
        cert = integer_relation(
            [ConstOracle("log", Fraction(2)), ConstOracle("log", Fraction(3)),
             ConstOracle("log", Fraction(6))], DEFAULT_CONFIG)
        assert cert.found
        v = cert.vector
        assert v in [[1, 1, -1], [-1, -1, 1]]

    def test_independent_pair(self):
        cert = integer_relation([RationalOracle(1), SQRT2], DEFAULT_CONFIG)
        assert not cert.found
        assert cert.status == "NoneUpTo"
        assert cert.residual_floor is not None

    def test_pi_e_no_small_relation(self):
        cert = integer_relation(
            [RationalOracle(1), ConstOracle("pi"), ConstOracle("e")],
            DEFAULT_CONFIG, height_bound=100)
        assert not cert.found

    def test_verify_rejects_nonrelation(self):
        ok, status, resid = verify_relation([RationalOracle(1), SQRT2],
                                            [1, 1], 128)
        assert not ok
        assert not resid.contains_zero()

    def test_verify_accepts_exact(self):
        ok, status, _ = verify_relation(
            [RationalOracle(1), ProductOracle([SQRT2], [2])], [-2, 1], 128)
        assert ok
        assert status == "ExactVerified"


class TestSimultaneousApprox:
    @pytest.mark.parametrize("literals,big_q,q_expected", [
        (["1/2"], 2, 2),
        (["pi"], 120, 113),
    ])
    def test_single_theta(self, literals, big_q, q_expected):
        from diophlab.oracles import parse_oracle
        q, duals, errs = simultaneous_approx(
            [parse_oracle(t) for t in literals], big_q)
        assert q == q_expected

    def test_dirichlet_bound_met(self):
        q, duals, errs = simultaneous_approx([SQRT2, PHI], 100)
        bound = Fraction(1, 10)  # Q^(-1/2) = 1/10
        for e in errs:
            assert abs(e).hi <= bound

    def test_pi_convergent(self):
        q, duals, errs = simultaneous_approx([ConstOracle("pi")], 120)
        assert (q, duals[0]) == (113, 355)
        assert abs(errs[0]).hi < Fraction(1, 3000)
