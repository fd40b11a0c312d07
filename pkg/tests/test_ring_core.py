import sys
from fractions import Fraction
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from .strategies import class_exprs, nonzero_rationals, rationals
sys.path.insert(0, "../theta_boundary")
from theta_boundary.errors import ParameterError
from theta_boundary.ring_core import (ONE, ClassExpr, constant, generator, make_monomial, monomial_divides,
									  monomial_lcm, monomial_quotient, parse_rational, power, render,
									  render_rational, scale, neg, sub, substitute)

NAMES = ("mu", "alpha", "eta", "xi")
WEIGHTS = (1, 1, 1, 1)
MU, ALPHA, ETA, XI = (generator(i) for i in range(4))


class TestClassExprMethods:
	"""Test canonical form and arithmetic of ClassExpr."""

	def test_zero_coefficients_are_dropped(self):
		x = ClassExpr([(((0, 1),), 1), (((0, 1),), -1), (((1, 2),), 0)])
		assert x.is_zero()
		assert x == 0
		assert len(x) == 0

	def test_equality_is_term_equality(self):
		assert MU + ALPHA == ALPHA + MU
		assert hash(MU + ALPHA) == hash(ALPHA + MU)
		assert MU * ALPHA != MU + ALPHA
		assert constant(Fraction(3, 2)) == Fraction(3, 2)

	def test_constant_value(self):
		assert constant(5).constant_value() == 5
		assert ClassExpr().constant_value() == 0
		assert (MU + 1).constant_value() is None

	def test_scalar_arithmetic(self):
		x = MU + 2 * ALPHA
		assert x / 2 == Fraction(1, 2) * MU + ALPHA
		assert scale(x, 0).is_zero()
		assert 3 - x == -(x - 3)
		assert neg(x) == -x
		assert sub(x, MU) == 2 * ALPHA

	def test_power(self):
		assert power(MU + ALPHA, 2) == MU * MU + 2 * MU * ALPHA + ALPHA * ALPHA
		assert power(MU, 0) == 1
		assert (MU + 1) ** 3 == MU * MU * MU + 3 * MU * MU + 3 * MU + 1
		with pytest.raises(ParameterError):
			power(MU, -1)

	def test_substitute(self):
		x = MU * MU + ETA
		assert substitute(x, {0: MU + ALPHA}) == MU * MU + 2 * MU * ALPHA + ALPHA * ALPHA + ETA
		assert substitute(x, {}) == x

	@given(class_exprs(), class_exprs(), class_exprs())
	def test_ring_axioms(self, x, y, z):
		assert x + y == y + x
		assert x * y == y * x
		assert (x + y) + z == x + (y + z)
		assert (x * y) * z == x * (y * z)
		assert x * (y + z) == x * y + x * z
		assert x - x == 0
		assert x * 1 == x

	@given(class_exprs(), rationals, rationals)
	def test_scaling_distributes(self, x, p, q):
		assert scale(x, p + q) == scale(x, p) + scale(x, q)

	@given(class_exprs(), nonzero_rationals)
	def test_scaling_is_invertible(self, x, q):
		assert scale(scale(x, q), 1 / q) == x
		assert x / q * q == x

	@settings(deadline=None)
	@given(class_exprs(max_terms=3, max_exponent=2), st.integers(0, 6), st.integers(0, 6))
	def test_power_adds_exponents(self, x, j, k):
		assert power(x, j + k) == power(x, j) * power(x, k)

	@given(rationals)
	def test_rational_round_trip(self, q):
		assert parse_rational(render_rational(q)) == q


class TestMonomialMethods:
	"""Test the sparse monomial helpers."""

	def test_make_monomial(self):
		assert make_monomial({2: 1, 0: 3, 1: 0}) == ((0, 3), (2, 1))
		assert make_monomial({}) == ONE
		with pytest.raises(ParameterError):
			make_monomial({0: -1})

	def test_divisibility(self):
		assert monomial_divides(((1, 1),), ((0, 2), (1, 1)))
		assert not monomial_divides(((1, 2),), ((0, 2), (1, 1)))
		assert monomial_quotient(((0, 2), (1, 1)), ((1, 1),)) == ((0, 2),)
		assert monomial_lcm(((0, 1), (1, 2)), ((1, 1), (2, 1))) == ((0, 1), (1, 2), (2, 1))


class TestRenderMethods:
	"""Test rational and class rendering."""

	def test_parse_rational(self):
		assert parse_rational("-3/4") == Fraction(-3, 4)
		assert parse_rational(" 7 ") == 7
		assert parse_rational("2/4") == Fraction(1, 2)
		for bad in ["3/0", "abc", "1.5", "1/-2", ""]:
			with pytest.raises(ParameterError):
				parse_rational(bad)

	def test_render_rational(self):
		assert render_rational(Fraction(1, 2)) == "1/2"
		assert render_rational(Fraction(-4, 2)) == "-2"
		assert render_rational(0) == "0"

	def test_render_theta_class(self):
		x = XI + MU + Fraction(1, 2) * ALPHA + Fraction(1, 4) * ETA
		assert render(x, NAMES, WEIGHTS) == "mu + 1/2*alpha + 1/4*eta + xi"

	def test_render_signs_and_degrees(self):
		assert render(ClassExpr(), NAMES, WEIGHTS) == "0"
		assert render(3 - MU, NAMES, WEIGHTS) == "3 - mu"
		assert render(-Fraction(1, 2) * ALPHA * ALPHA * MU, NAMES, WEIGHTS) == "-1/2*mu*alpha^2"
		assert render(ETA * MU * MU * MU - ALPHA, NAMES, WEIGHTS) == "-alpha + mu^3*eta"
