from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diophlab.matrixdioph import (RealMatrix, TorusClosure,
                                  VectorApproxSequence, error_vector,
                                  homogeneous_independence,
                                  inhomogeneous_independence, torus_closure,
                                  vector_membership)
from diophlab.oracles import (PHI, ConstOracle, RationalOracle, SurdOracle)

SQRT2 = SurdOracle(0, 1, 1, 2)
SQRT3 = SurdOracle(0, 1, 1, 3)


def rational_kernel(rows):
    """Exact fraction Gauss elimination right-kernel basis (oracle)."""
    import sympy
    m = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
    return [list(v) for v in m.nullspace()]


class TestErrorVector:
    def test_rational_exact(self):
        theta = RealMatrix.from_rationals([[Fraction(1, 2), Fraction(1, 3)]])
        eps, dual = error_vector(theta, [6, 6])
        assert dual == [5]
        assert eps[0].contains(Fraction(0))

    def test_irrational_duals_nearest(self):
        theta = RealMatrix([[SQRT2]])
        eps, dual = error_vector(theta, [5])
        assert dual == [7]
        assert abs(float(eps[0].mid) - (5 * 2 ** 0.5 - 7)) < 1e-10


class TestVectorMembership:
    def test_rational_member(self):
        theta = RealMatrix.from_rationals([[Fraction(1, 2)]])
        seq = VectorApproxSequence(vectors=[[2], [4], [6]])
        assert vector_membership(theta, seq).status == "CertifiedMember"

    def test_rational_nonmember_witness(self):
        theta = RealMatrix.from_rationals([[Fraction(1, 2)]])
        seq = VectorApproxSequence(vectors=[[2], [3], [6]])
        v = vector_membership(theta, seq)
        assert v.status == "NotMember"
        assert v.witness == (1, 0)

    def test_irrational_member(self):
        theta = RealMatrix([[SQRT2]])
        # convergent denominators of sqrt2, tail below tau
        seq = VectorApproxSequence(
            vectors=[[q] for q in [5741, 13860, 33461, 80782]])
        assert vector_membership(theta, seq).is_member


class TestHomogeneousIndependence:
    def test_rational_dependent(self):
        theta = RealMatrix.from_rationals([[1, 2], [3, 6]])
        indep, certs = homogeneous_independence(theta)
        assert not indep
        v = certs[0].vector
        assert v[0] + 2 * v[1] == 0 and 3 * v[0] + 6 * v[1] == 0

    def test_rational_independent(self):
        theta = RealMatrix.from_rationals([[1, 0], [0, 1]])
        indep, _ = homogeneous_independence(theta)
        assert indep

    def test_single_irrational_column(self):
        theta = RealMatrix([[SQRT2]])
        indep, _ = homogeneous_independence(theta)
        assert indep

    def test_irrational_dependent_columns(self):
        # columns (sqrt2, 2*sqrt2): kernel vector (2, -1)
        theta = RealMatrix([[SQRT2, SurdOracle(0, 2, 1, 2)]])
        indep, certs = homogeneous_independence(theta)
        assert not indep
        v = certs[0].vector
        assert v in [[2, -1], [-2, 1]]

    def test_irrational_independent_columns(self):
        theta = RealMatrix([[SQRT2, SQRT3]])
        indep, _ = homogeneous_independence(theta)
        assert indep


class TestInhomogeneousIndependence:
    def test_rational_always_dependent(self):
        theta = RealMatrix.from_rationals([[Fraction(1, 3)]])
        indep, certs = inhomogeneous_independence(theta)
        assert not indep
        assert certs[0].found

    def test_sqrt2_independent(self):
        theta = RealMatrix([[SQRT2]])
        indep, _ = inhomogeneous_independence(theta)
        assert indep

    def test_half_plus_sqrt2_row(self):
        # row (sqrt2, 1 + sqrt2): n = (1, -1) gives Theta n = -1 in Z
        theta = RealMatrix([[SQRT2, SurdOracle(1, 1, 1, 2)]])
        indep, certs = inhomogeneous_independence(theta)
        assert not indep


class TestTorusClosure:
    def test_irrational_dense(self):
        c = torus_closure(RealMatrix([[SQRT2]]))
        assert c.kind == "FullTorus"
        assert c.dimension == 1

    def test_rational_finite(self):
        c = torus_closure(RealMatrix.from_rationals([[Fraction(1, 2)]]))
        assert c.kind == "FiniteGroup"
        assert c.order == 2

    def test_rational_finite_two_rows(self):
        c = torus_closure(RealMatrix.from_rationals(
            [[Fraction(1, 2)], [Fraction(1, 3)]]))
        assert c.kind == "FiniteGroup"
        assert c.order == 6

    def test_subtorus_coset(self):
        c = torus_closure(RealMatrix([[SQRT2], [SQRT2]]))
        assert c.kind == "SubtorusCoset"
        assert c.dimension == 1
        assert c.annihilator == [[1, -1]]

    @given(st.integers(2, 9), st.integers(2, 9))
    def test_product_order(self, p, q):
        c = torus_closure(RealMatrix.from_rationals(
            [[Fraction(1, p)], [Fraction(1, q)]]))
        assert c.kind == "FiniteGroup"
        from math import lcm
        assert c.order == lcm(p, q)
