"""
An evaluation path for top intersection numbers that shares nothing with
evaluate_top beyond the rule list: dense multinomial expansion with no
truncation, relation substitution in a random order, then a direct lookup of
the top intersection table.
"""
import random
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, Optional, Tuple
from .chow_models import ALPHA, BASE, ETA, MU, RingModel
from .errors import DegreeMismatchError, ParameterError
from .presented_ring import GEOMETRIC
from .ring_core import ONE, ClassExpr, Monomial, monomial_divides, monomial_mul, monomial_quotient, mul


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
	if parts == 1:
		yield (total,)
		return
	for first in range(total + 1):
		for rest in _compositions(total - first, parts - 1):
			yield (first,) + rest


def multinomial_power(x: ClassExpr, k: int) -> ClassExpr:
	"""x^k by the multinomial theorem, all at once and without any relation."""
	if k < 0:
		raise ParameterError(f"exponent must be non-negative (got {k})")
	terms = list(x.items())
	if not terms:
		return ClassExpr({ONE: 1}) if k == 0 else ClassExpr()
	acc: Dict[Monomial, Fraction] = {}
	for counts in _compositions(k, len(terms)):
		coeff = Fraction(factorial(k))
		mono = ONE
		for (term_mono, term_coeff), count in zip(terms, counts):
			if not count:
				continue
			coeff = coeff / factorial(count) * term_coeff ** count
			mono = monomial_mul(mono, tuple((gen, exp * count) for gen, exp in term_mono))
		acc[mono] = acc.get(mono, 0) + coeff
	return ClassExpr(acc)


def substitute_relations(x: ClassExpr, model: RingModel, rng: random.Random) -> Dict[Monomial, Fraction]:
	"""
	Rewrites until no rule pattern divides any monomial. Each round visits the
	pending monomials in a shuffled order and applies a randomly chosen
	matching rule. Nothing is truncated.
	"""
	rules = model.system.rules
	pending: Dict[Monomial, Fraction] = dict(x.items())
	done: Dict[Monomial, Fraction] = {}
	while pending:
		current_round = list(pending.items())
		rng.shuffle(current_round)
		pending = {}
		for mono, coeff in current_round:
			if not coeff:
				continue
			matches = [rule for rule in rules if monomial_divides(rule.pattern, mono)]
			if not matches:
				done[mono] = done.get(mono, 0) + coeff
				continue
			rule = rng.choice(matches)
			quotient = monomial_quotient(mono, rule.pattern)
			for rep_mono, rep_coeff in rule.replacement.items():
				target = monomial_mul(quotient, rep_mono)
				pending[target] = pending.get(target, 0) + coeff * rep_coeff
	return {mono: coeff for mono, coeff in done.items() if coeff}


def _lookup(model: RingModel, mono: Monomial) -> Fraction:
	exponents = dict(mono)
	g, n = model.g, model.n
	fibers = [exponents[gen] for gen in model.fiber_ids if gen in exponents]
	if model.kind != BASE:
		if not fibers:
			return Fraction(0)
		if fibers != [1]:
			return Fraction(0)
	a, b, c = exponents.get(MU, 0), exponents.get(ALPHA, 0), exponents.get(ETA, 0)
	if c >= 2 or (b and c):
		return Fraction(0)
	if c == 1:
		return Fraction(n * factorial(g - 1)) if a == g - 1 else Fraction(0)
	if b == 2 and a == g - 2:
		return Fraction(-2 * n * factorial(g - 2))
	return Fraction(0)


def brute_force_oracle(model: RingModel, x: ClassExpr, power: int = 1, seed: Optional[int] = None) -> Fraction:
	"""
	Top intersection number of x^power, computed independently of evaluate_top.
	:param seed: Seed for the substitution order. Any seed gives the same answer.
	"""
	table = model.table
	table.check_alphabet(x)
	if any(table.entries[gen].kind != GEOMETRIC for gen in x.generators()):
		raise ParameterError("the oracle evaluates classes without unknowns")
	expanded = multinomial_power(x, power)
	for mono in expanded.monomials():
		if table.degree(mono) != model.dimension:
			raise DegreeMismatchError(f"oracle input has a term of degree {table.degree(mono)}, "
									  f"top degree is {model.dimension}")
	substituted = substitute_relations(expanded, model, random.Random(seed))
	return sum((coeff * _lookup(model, mono) for mono, coeff in substituted.items()), Fraction(0))


def random_rational(rng: random.Random, bound: int = 4, max_denominator: int = 4) -> Fraction:
	return Fraction(rng.randint(-bound, bound), rng.randint(1, max_denominator))


def random_linear_form(model: RingModel, rng: random.Random) -> ClassExpr:
	"""A random divisor class over the geometric generators of model."""
	terms = {}
	for gen, entry in enumerate(model.table.entries):
		if entry.kind == GEOMETRIC and rng.random() < 0.75:
			terms[((gen, 1),)] = random_rational(rng)
	return ClassExpr(terms)


def random_top_class(model: RingModel, rng: random.Random) -> ClassExpr:
	"""A random class of top degree: a product of random divisors, plus a second such product."""
	total = ClassExpr()
	for _ in range(rng.randint(1, 2)):
		product = ClassExpr({ONE: 1})
		for _ in range(model.dimension):
			product = mul(product, random_linear_form(model, rng))
		total = total + product
	return total


def random_class(model: RingModel, rng: random.Random, max_terms: int = 6, max_degree: Optional[int] = None) -> ClassExpr:
	"""A random, usually inhomogeneous, class over the geometric generators."""
	geometric = [gen for gen, entry in enumerate(model.table.entries) if entry.kind == GEOMETRIC]
	max_degree = model.dimension + 1 if max_degree is None else max_degree
	terms = {}
	for _ in range(rng.randint(1, max_terms)):
		exponents: Dict[int, int] = {}
		for _ in range(rng.randint(0, max_degree)):
			gen = rng.choice(geometric)
			exponents[gen] = exponents.get(gen, 0) + 1
		terms[tuple(sorted(exponents.items()))] = random_rational(rng)
	return ClassExpr(terms)
