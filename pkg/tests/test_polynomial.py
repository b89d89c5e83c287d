from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from cohomring.algebra.polynomial import GradedPolynomial, homogeneous_monomials
from cohomring.algebra.scalar import Cyclotomic
from cohomring.core.exceptions import ShapeMismatchError

x = GradedPolynomial.variable(2, 0)
y = GradedPolynomial.variable(2, 1)


def test_monomials_are_lex_descending():
    assert homogeneous_monomials(2, 4) == [(2, 0), (1, 1), (0, 2)]
    assert homogeneous_monomials(1, 6) == [(3,)]


def test_monomials_in_odd_or_negative_degree():
    assert homogeneous_monomials(3, 3) == []
    assert homogeneous_monomials(2, -2) == []
    assert homogeneous_monomials(0, 0) == [()]
    assert homogeneous_monomials(0, 2) == []


@given(r=st.integers(min_value=1, max_value=4), m=st.integers(min_value=0, max_value=8))
def test_monomial_count(r, m):
    assert len(homogeneous_monomials(r, 2 * m)) == comb(m + r - 1, r - 1)


def test_arithmetic():
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + y) ** 2 == x * x + x * y * 2 + y * y
    assert (x - x).is_zero()
    assert 2 * x == x + x


def test_degrees():
    assert (x * y).degree == 4
    assert GradedPolynomial.zero(2).degree == -1
    assert GradedPolynomial.one(2).degree == 0
    with pytest.raises(ValueError):
        (x + GradedPolynomial.one(2)).degree
    assert (x * x + y).homogeneous_component(2) == y


def test_leading_term_and_normalization():
    p = y - x * 3
    assert p.leading_term() == ((1, 0), -3)
    assert p.normalized() == x - y * Fraction(1, 3)
    assert GradedPolynomial.zero(2).normalized().is_zero()


def test_substitute_linear():
    swap = [[0, 1], [1, 0]]
    assert (x * x + y).substitute_linear(swap, 2) == y * y + x
    # one H coordinate mapped into the second K coordinate
    h = GradedPolynomial.variable(1, 0)
    p = x * y + y
    assert p.substitute_linear([[0], [1]], 1) == h


def test_mismatched_variables():
    with pytest.raises(ShapeMismatchError):
        x + GradedPolynomial.variable(1, 0)
    with pytest.raises(ShapeMismatchError):
        x.substitute_linear([[1, 0]], 2)


def test_cyclotomic_coefficients():
    z = Cyclotomic.zeta(3)
    p = x.scale(z) + y
    assert (p * 2).coefficient((1, 0)) == 2 * z
    assert p.normalized().coefficient((1, 0)) == 1


def test_string_form():
    assert str(x - y) == "x1 - x2"
    assert str(GradedPolynomial.variable(1, 0) * 2) == "2*x"
    assert str(GradedPolynomial.zero(3)) == "0"
