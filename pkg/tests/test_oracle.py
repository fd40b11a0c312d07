import random
import sys
import pytest
from hypothesis import given, settings
from .strategies import sampled_top_classes
sys.path.insert(0, "../theta_boundary")
from theta_boundary.chow_models import evaluate_top, make_base_ring, make_level_ring, make_poincare_ring
from theta_boundary.derivations import boundary_closed_form, theta_class
from theta_boundary.errors import DegreeMismatchError, ParameterError
from theta_boundary.oracle import (brute_force_oracle, multinomial_power, random_class, random_linear_form,
								   random_top_class, substitute_relations)
from theta_boundary.ring_core import generator, power

MODELS = [make_base_ring(4, 2), make_poincare_ring(4, 2), make_level_ring(4, 2, 3)]


class TestOracleMethods:
	"""Test the brute force evaluation path against evaluate_top."""

	def test_multinomial_power(self):
		x = generator(0) + 2 * generator(1) - generator(2)
		for k in range(5):
			assert multinomial_power(x, k) == power(x, k)
		with pytest.raises(ParameterError):
			multinomial_power(x, -1)

	def test_substitution_leaves_no_pattern(self):
		model = make_poincare_ring(3, 1)
		xi = model.fiber()
		substituted = substitute_relations(xi ** 4, model, random.Random(3))
		assert substituted == {((1, 3), (3, 1)): -1}

	@pytest.mark.parametrize("model", MODELS, ids=lambda model: model.describe())
	def test_agrees_with_evaluate_top(self, model):
		rng = random.Random(2024)
		for _ in range(50):
			x = random_top_class(model, rng)
			assert brute_force_oracle(model, x, seed=rng.randrange(1000)) == evaluate_top(model, x)

	@settings(max_examples=30, deadline=None)
	@given(sampled_top_classes(make_level_ring(3, 1, 2)))
	def test_agrees_on_level_model(self, x):
		model = make_level_ring(3, 1, 2)
		assert brute_force_oracle(model, x, seed=1) == evaluate_top(model, x)

	@pytest.mark.parametrize("g", range(2, 7))
	def test_theta_power(self, g):
		model = make_poincare_ring(g, 1)
		assert brute_force_oracle(model, theta_class(model), power=g + 1, seed=g) == boundary_closed_form(g, 1)

	def test_seed_does_not_matter(self):
		model = make_level_ring(3, 1, 2)
		x = random_top_class(model, random.Random(5))
		assert len({brute_force_oracle(model, x, seed=seed) for seed in range(10)}) == 1

	def test_wrong_degree(self):
		model = make_poincare_ring(3, 1)
		with pytest.raises(DegreeMismatchError):
			brute_force_oracle(model, model.gen("mu") ** 3)
		with pytest.raises(DegreeMismatchError):
			brute_force_oracle(model, model.gen("mu") ** 5)

	def test_unknowns_rejected(self):
		model = make_poincare_ring(3, 1, ("c",))
		with pytest.raises(ParameterError):
			brute_force_oracle(model, model.gen("c") * model.gen("mu") ** 4)


class TestRandomClassMethods:
	"""Test the random class generators used by the sweeps."""

	def test_random_top_class_degree(self):
		rng = random.Random(11)
		for model in MODELS:
			for _ in range(10):
				x = random_top_class(model, rng)
				assert all(model.table.degree(mono) == model.dimension for mono in x.monomials())

	def test_random_linear_form(self):
		rng = random.Random(12)
		model = make_level_ring(3, 1, 2)
		for _ in range(10):
			assert all(model.table.degree(mono) == 1 for mono in random_linear_form(model, rng).monomials())

	def test_random_class_alphabet(self):
		rng = random.Random(13)
		model = make_poincare_ring(3, 1, ("c",))
		for _ in range(20):
			x = random_class(model, rng)
			assert not x.generators() & model.table.unknown_ids
