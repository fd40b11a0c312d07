"""
Normal forms in a graded commutative ring presented by generators and monomial
rewrite rules, truncated above the ring dimension.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple
from .errors import AlphabetError, ParameterError, RewriteError
from .ring_core import (ONE, ClassExpr, Monomial, constant, generator, monomial_degree, monomial_divides,
						monomial_exponent, monomial_generators, monomial_lcm, monomial_mul, monomial_quotient,
						mul, render)

GEOMETRIC = "geometric"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class GeneratorEntry:
	name: str
	degree: int = 1
	kind: str = GEOMETRIC
	component: Optional[int] = None


class GeneratorTable:
	"""Interns generator names to ids; ids are positions in the table."""

	def __init__(self, entries: Iterable[GeneratorEntry]):
		self.entries = tuple(entries)
		self.names = tuple(entry.name for entry in self.entries)
		if len(set(self.names)) != len(self.names):
			raise ParameterError(f"duplicate generator names in {self.names}")
		for entry in self.entries:
			if entry.kind not in (GEOMETRIC, UNKNOWN):
				raise ParameterError(f"unknown generator kind {entry.kind!r} for {entry.name}")
			if entry.kind == UNKNOWN and entry.degree != 0:
				raise ParameterError(f"unknown {entry.name} must have geometric degree 0")
			if entry.degree not in (0, 1):
				raise ParameterError(f"generator {entry.name} must have degree 0 or 1")
		self.weights = tuple(entry.degree for entry in self.entries)
		self.unknown_ids = frozenset(i for i, entry in enumerate(self.entries) if entry.kind == UNKNOWN)
		self._index = {name: i for i, name in enumerate(self.names)}

	def __len__(self):
		return len(self.entries)

	def __contains__(self, name):
		return name in self._index

	def __repr__(self):
		return f"GeneratorTable({', '.join(self.names)})"

	def index(self, name: str) -> int:
		try:
			return self._index[name]
		except KeyError:
			raise AlphabetError(f"generator '{name}' is not in the alphabet {self.names}") from None

	def generator(self, name: str) -> ClassExpr:
		return generator(self.index(name))

	def degree(self, mono: Monomial) -> int:
		return monomial_degree(mono, self.weights)

	def is_unknown(self, gen: int) -> bool:
		return gen in self.unknown_ids

	def check_alphabet(self, x: ClassExpr):
		size = len(self.entries)
		for gen in x.generators():
			if not 0 <= gen < size:
				raise AlphabetError(f"generator id {gen} is outside the alphabet {self.names}")

	def split_unknowns(self, mono: Monomial) -> Tuple[Monomial, Monomial]:
		"""Splits a monomial into its (unknown part, geometric part)."""
		if not self.unknown_ids:
			return ONE, mono
		unknown = tuple(pair for pair in mono if pair[0] in self.unknown_ids)
		if not unknown:
			return ONE, mono
		return unknown, tuple(pair for pair in mono if pair[0] not in self.unknown_ids)

	def translate(self, x: ClassExpr, target: "GeneratorTable", renames: Optional[Mapping[str, str]] = None) -> ClassExpr:
		"""
		Relabels a class into another alphabet by generator name.
		:param renames: Optional source name -> target name overrides, e.g. {"xi_0": "xi"}.
		"""
		renames = renames or {}
		id_map = {}
		for gen in x.generators():
			name = self.names[gen]
			id_map[gen] = target.index(renames.get(name, name))
		terms = {}
		for mono, coeff in x.items():
			terms[tuple(sorted((id_map[gen], exp) for gen, exp in mono))] = coeff
		return ClassExpr(terms)

	def render(self, x: ClassExpr) -> str:
		self.check_alphabet(x)
		return render(x, self.names, self.weights)


@dataclass(frozen=True)
class RewriteRule:
	"""pattern -> replacement. label names the relation the rule encodes."""
	pattern: Monomial
	replacement: ClassExpr
	label: str = ""

	def describe(self, table: GeneratorTable) -> str:
		pattern = table.render(ClassExpr({self.pattern: 1}))
		name = f" [{self.label}]" if self.label else ""
		return f"{pattern} -> {table.render(self.replacement)}{name}"


class RewriteSystem:
	"""
	A finite set of monomial rewrite rules over a generator table, plus the top
	geometric degree of the ring. Monomials above that degree are zero.
	"""

	def __init__(self, table: GeneratorTable, rules: Sequence[RewriteRule], dimension: int, check: bool = True):
		if not isinstance(dimension, int) or dimension < 1:
			raise ParameterError(f"ring dimension must be a positive integer (got {dimension!r})")
		self.table = table
		self.rules = tuple(rules)
		self.dimension = dimension
		for rule in self.rules:
			self._validate_rule(rule)
		self._cache: Dict[Monomial, Dict[Monomial, Fraction]] = {}
		if check:
			report = check_local_confluence(self)
			if not report.passed:
				witnesses = ", ".join(table.render(ClassExpr({o.monomial: 1})) for o in report.mismatches)
				raise RewriteError(f"rewrite system is not locally confluent; witnesses: {witnesses}")

	def _validate_rule(self, rule: RewriteRule):
		table = self.table
		if not rule.pattern:
			raise RewriteError("rule pattern must not be the unit monomial")
		for gen, _ in rule.pattern:
			if not 0 <= gen < len(table) or table.is_unknown(gen):
				raise RewriteError(f"rule pattern {rule.pattern} must use geometric generators only")
		table.check_alphabet(rule.replacement)
		pattern_degree = table.degree(rule.pattern)
		leading = max(gen for gen, _ in rule.pattern)
		leading_exp = monomial_exponent(rule.pattern, leading)
		for mono in rule.replacement.monomials():
			if table.degree(mono) != pattern_degree:
				raise RewriteError(f"replacement of {rule.describe(table)} is not homogeneous of degree {pattern_degree}")
			if monomial_exponent(mono, leading) >= leading_exp:
				raise RewriteError(f"replacement of {rule.describe(table)} does not lower the exponent of {table.names[leading]}")

	def __repr__(self):
		return f"RewriteSystem({[rule.describe(self.table) for rule in self.rules]}, dimension={self.dimension})"

	def matching_rules(self, mono: Monomial):
		return [rule for rule in self.rules if monomial_divides(rule.pattern, mono)]

	def reduce_monomial(self, mono: Monomial) -> Dict[Monomial, Fraction]:
		"""Normal form of a single geometric monomial, first matching rule first. Memoized."""
		cached = self._cache.get(mono)
		if cached is not None:
			return cached
		result: Dict[Monomial, Fraction] = {}
		if self.table.degree(mono) <= self.dimension:
			rule = next((r for r in self.rules if monomial_divides(r.pattern, mono)), None)
			if rule is None:
				result = {mono: Fraction(1)}
			else:
				quotient = monomial_quotient(mono, rule.pattern)
				for rep_mono, rep_coeff in rule.replacement.items():
					for red_mono, red_coeff in self.reduce_monomial(monomial_mul(quotient, rep_mono)).items():
						result[red_mono] = result.get(red_mono, 0) + rep_coeff * red_coeff
				result = {m: c for m, c in result.items() if c}
		self._cache[mono] = result
		return result

	def reduce_monomial_randomly(self, mono: Monomial, rng: random.Random, max_steps: Optional[int] = None) -> Dict[Monomial, Fraction]:
		"""Normal form of a monomial, picking the next monomial and rule at random. Not memoized."""
		pending: Dict[Monomial, Fraction] = {mono: Fraction(1)}
		done: Dict[Monomial, Fraction] = {}
		steps = 0
		while pending:
			current = rng.choice(list(pending))
			coeff = pending.pop(current)
			if not coeff or self.table.degree(current) > self.dimension:
				continue
			matches = self.matching_rules(current)
			if not matches:
				done[current] = done.get(current, 0) + coeff
				continue
			steps += 1
			if max_steps is not None and steps > max_steps:
				raise RewriteError(f"reduction did not terminate within {max_steps} steps")
			rule = rng.choice(matches)
			quotient = monomial_quotient(current, rule.pattern)
			for rep_mono, rep_coeff in rule.replacement.items():
				target = monomial_mul(quotient, rep_mono)
				pending[target] = pending.get(target, 0) + coeff * rep_coeff
		return {m: c for m, c in done.items() if c}


def normal_form(x: ClassExpr, system: RewriteSystem, rng: Optional[random.Random] = None, max_steps: Optional[int] = None) -> ClassExpr:
	"""
	Reduces x modulo the rules of system. Unknown generators pass through
	untouched; monomials of geometric degree above the dimension are dropped.
	:param rng: If given, rules are applied in a random order instead of the memoized one.
	:param max_steps: Rewrite step bound per monomial for the random order.
	"""
	table = system.table
	table.check_alphabet(x)
	acc: Dict[Monomial, Fraction] = {}
	for mono, coeff in x.items():
		unknown, geometric = table.split_unknowns(mono)
		if rng is None:
			reduced = system.reduce_monomial(geometric)
		else:
			reduced = system.reduce_monomial_randomly(geometric, rng, max_steps)
		for red_mono, red_coeff in reduced.items():
			key = monomial_mul(unknown, red_mono)
			acc[key] = acc.get(key, 0) + coeff * red_coeff
	return ClassExpr(acc)


def reduced_product(a: ClassExpr, b: ClassExpr, system: RewriteSystem) -> ClassExpr:
	return normal_form(mul(a, b), system)


def reduced_power(x: ClassExpr, k: int, system: RewriteSystem) -> ClassExpr:
	"""x^k in normal form, reducing after every multiplication so intermediates stay sparse."""
	if not isinstance(k, int) or k < 0:
		raise ParameterError(f"exponent must be a non-negative integer (got {k!r})")
	base = normal_form(x, system)
	result = normal_form(constant(1), system)
	for _ in range(k):
		result = normal_form(mul(result, base), system)
	return result


def homogeneous_part(x: ClassExpr, d: int, table: GeneratorTable) -> ClassExpr:
	"""Terms of geometric degree exactly d. Unknowns carry degree 0."""
	return ClassExpr({mono: coeff for mono, coeff in x.items() if table.degree(mono) == d})


def is_homogeneous(x: ClassExpr, d: int, table: GeneratorTable) -> bool:
	return all(table.degree(mono) == d for mono in x.monomials())


@dataclass(frozen=True)
class Overlap:
	left: RewriteRule
	right: RewriteRule
	monomial: Monomial
	via_left: ClassExpr
	via_right: ClassExpr

	@property
	def joinable(self) -> bool:
		return self.via_left == self.via_right


@dataclass(frozen=True)
class ConfluenceReport:
	overlaps: Tuple[Overlap, ...]

	@property
	def mismatches(self) -> Tuple[Overlap, ...]:
		return tuple(overlap for overlap in self.overlaps if not overlap.joinable)

	@property
	def passed(self) -> bool:
		return not self.mismatches

	def render(self, table: GeneratorTable) -> str:
		lines = []
		for overlap in self.overlaps:
			status = "ok" if overlap.joinable else "MISMATCH"
			lines.append(f"{table.render(ClassExpr({overlap.monomial: 1}))}: "
						 f"{table.render(overlap.via_left)} | {table.render(overlap.via_right)} [{status}]")
		lines.append("confluent" if self.passed else f"{len(self.mismatches)} non-joinable overlap(s)")
		return "\n".join(lines)


def check_local_confluence(system: RewriteSystem) -> ConfluenceReport:
	"""
	Reduces the lcm of every pair of rules whose patterns share a generator
	both ways and compares the normal forms.
	"""
	overlaps = []
	rules = system.rules
	for i, left in enumerate(rules):
		for right in rules[i + 1:]:
			if not monomial_generators(left.pattern) & monomial_generators(right.pattern):
				continue
			lcm = monomial_lcm(left.pattern, right.pattern)
			via_left = normal_form(mul(ClassExpr({monomial_quotient(lcm, left.pattern): 1}), left.replacement), system)
			via_right = normal_form(mul(ClassExpr({monomial_quotient(lcm, right.pattern): 1}), right.replacement), system)
			overlaps.append(Overlap(left, right, lcm, via_left, via_right))
	return ConfluenceReport(tuple(overlaps))
