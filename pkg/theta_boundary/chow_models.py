"""
The three ring models: CH*(B x C) ("base"), the P^1-bundle over it ("poincare")
and the m-component level family ("level").

Every model lists the base generators first, so mu, alpha and eta have the ids
0, 1 and 2 in every table. The fiber classes xi (or xi_0..xi_{m-1}) follow, and
solver unknowns, if any, come last.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Tuple, Union
import sympy
from .errors import AlphabetError, DegreeMismatchError, ModelInconsistencyError, ModelKindError, ParameterError
from .presented_ring import (UNKNOWN, GeneratorEntry, GeneratorTable, RewriteRule, RewriteSystem, normal_form,
							 reduced_power, reduced_product)
from .ring_core import ClassExpr, Monomial, generator, substitute

BASE = "base"
POINCARE = "poincare"
LEVEL = "level"
MODEL_KINDS = (BASE, POINCARE, LEVEL)

ZERO = "zero"
INFINITY = "infinity"

MU, ALPHA, ETA = 0, 1, 2
BASE_NAMES = ("mu", "alpha", "eta")

CURVES = ("mu_star", "eta_star", "delta_star")
PAIRING_COLUMNS = ("mu", "eta", "alpha")

_DESCRIPTOR_RE = re.compile(r"^\s*(\w+)\s*\(\s*g\s*=\s*(-?\d+)\s*,\s*n\s*=\s*(-?\d+)\s*(?:,\s*m\s*=\s*(-?\d+)\s*)?\)\s*$")


@dataclass(frozen=True)
class CurvePairing:
	"""Intersection numbers of the test curves (rows) with mu, eta, alpha (columns)."""
	matrix: Tuple[Tuple[Fraction, ...], ...]

	@classmethod
	def for_degree(cls, n: int) -> "CurvePairing":
		return cls.from_rows([[n, 0, 0], [0, n, 0], [n, n, 2 * n]])

	@classmethod
	def from_rows(cls, rows: Sequence[Sequence[Union[int, Fraction]]]) -> "CurvePairing":
		if len(rows) != len(CURVES) or any(len(row) != len(PAIRING_COLUMNS) for row in rows):
			raise ParameterError("a curve pairing is a 3x3 table")
		return cls(tuple(tuple(Fraction(value) for value in row) for row in rows))

	def row(self, curve: str) -> Tuple[Fraction, ...]:
		if curve not in CURVES:
			raise ParameterError(f"unknown test curve {curve!r}; expected one of {', '.join(CURVES)}")
		return self.matrix[CURVES.index(curve)]

	def rank(self) -> int:
		return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in self.matrix]).rank()


@dataclass(frozen=True, eq=False)
class RingModel:
	kind: str
	g: int
	n: int
	m: int
	table: GeneratorTable
	system: RewriteSystem
	base: Optional["RingModel"]
	pairing: CurvePairing

	@property
	def dimension(self) -> int:
		return self.system.dimension

	@property
	def fiber_ids(self) -> Tuple[int, ...]:
		return tuple(i for i, entry in enumerate(self.table.entries) if entry.component is not None)

	def describe(self) -> str:
		if self.kind == LEVEL:
			return f"{self.kind}(g={self.g},n={self.n},m={self.m})"
		return f"{self.kind}(g={self.g},n={self.n})"

	def __repr__(self):
		return f"RingModel({self.describe()})"

	def gen(self, name: str) -> ClassExpr:
		return self.table.generator(name)

	def fiber(self, component: int = 0) -> ClassExpr:
		"""The fiber class xi of the bundle (xi_i on component i of a level model)."""
		if self.kind == BASE:
			raise ModelKindError("the base model has no fiber class")
		if not 0 <= component < self.m:
			raise ParameterError(f"component {component} out of range 0..{self.m - 1}")
		return generator(self.fiber_ids[component])

	def normal_form(self, x: ClassExpr) -> ClassExpr:
		return normal_form(x, self.system)

	def product(self, a: ClassExpr, b: ClassExpr) -> ClassExpr:
		return reduced_product(a, b, self.system)

	def power(self, x: ClassExpr, k: int) -> ClassExpr:
		return reduced_power(x, k, self.system)

	def render(self, x: ClassExpr) -> str:
		return self.table.render(x)


def check_parameters(g, n, m=1):
	for label, value, low in (("g", g, 2), ("n", n, 1), ("m", m, 1)):
		if isinstance(value, bool) or not isinstance(value, int):
			raise ParameterError(f"{label} must be an integer (got {value!r})")
		if value < low:
			hint = "; the top relation for alpha^2 needs (g-2)!" if label == "g" else ""
			raise ParameterError(f"{label} must be >= {low} (got {value}){hint}")


def _base_entries():
	return [GeneratorEntry(name) for name in BASE_NAMES]


def _unknown_entries(unknowns: Sequence[str]):
	return [GeneratorEntry(name, degree=0, kind=UNKNOWN) for name in unknowns]


def _base_rules():
	return [
		RewriteRule(((ETA, 2),), ClassExpr(), "square: eta^2 = 0"),
		RewriteRule(((ALPHA, 1), (ETA, 1)), ClassExpr(), "triangle: alpha*eta = 0"),
	]


@lru_cache(maxsize=None)
def make_base_ring(g: int, n: int, unknowns: Tuple[str, ...] = ()) -> RingModel:
	"""CH*(B x C): generators mu, alpha, eta, dimension g."""
	check_parameters(g, n)
	table = GeneratorTable(_base_entries() + _unknown_entries(unknowns))
	system = RewriteSystem(table, _base_rules(), g)
	return RingModel(BASE, g, n, 1, table, system, None, CurvePairing.for_degree(n))


@lru_cache(maxsize=None)
def make_poincare_ring(g: int, n: int, unknowns: Tuple[str, ...] = ()) -> RingModel:
	"""CH*(B x C)[xi]/(xi^2 + alpha*xi), dimension g + 1."""
	check_parameters(g, n)
	base = make_base_ring(g, n, unknowns)
	table = GeneratorTable(_base_entries() + [GeneratorEntry("xi", component=0)] + _unknown_entries(unknowns))
	xi = table.index("xi")
	rules = _base_rules() + [
		RewriteRule(((xi, 2),), -(generator(ALPHA) * generator(xi)), "black square: xi^2 = -alpha*xi"),
	]
	system = RewriteSystem(table, rules, g + 1)
	return RingModel(POINCARE, g, n, 1, table, system, base, base.pairing)


@lru_cache(maxsize=None)
def make_level_ring(g: int, n: int, m: int, unknowns: Tuple[str, ...] = ()) -> RingModel:
	"""
	m bundle components over B x C with fiber classes xi_0..xi_{m-1}.
	Each component satisfies xi_i^2 = -m*alpha*xi_i, and classes of distinct
	components multiply to 0.
	"""
	check_parameters(g, n, m)
	base = make_base_ring(g, n, unknowns)
	fibers = [GeneratorEntry(f"xi_{i}", component=i) for i in range(m)]
	table = GeneratorTable(_base_entries() + fibers + _unknown_entries(unknowns))
	ids = [table.index(f"xi_{i}") for i in range(m)]
	rules = _base_rules()
	for i, xi in enumerate(ids):
		rules.append(RewriteRule(((xi, 2),), -m * (generator(ALPHA) * generator(xi)),
								 f"black square': xi_{i}^2 = -{m}*alpha*xi_{i}"))
	for i, left in enumerate(ids):
		for j in range(i + 1, m):
			rules.append(RewriteRule(((left, 1), (ids[j], 1)), ClassExpr(), f"disjoint components: xi_{i}*xi_{j} = 0"))
	system = RewriteSystem(table, rules, g + 1)
	return RingModel(LEVEL, g, n, m, table, system, base, base.pairing)


def make_model(kind: str, g: int, n: int, m: Optional[int] = None) -> RingModel:
	if kind == BASE:
		return make_base_ring(g, n)
	if kind == POINCARE:
		return make_poincare_ring(g, n)
	if kind == LEVEL:
		return make_level_ring(g, n, 1 if m is None else m)
	raise ParameterError(f"unknown model kind {kind!r}; expected one of {', '.join(MODEL_KINDS)}")


def parse_model_descriptor(text: str) -> RingModel:
	"""Parses "base(g=4,n=1)", "poincare(g=4,n=1)" or "level(g=3,n=1,m=2)"."""
	match = _DESCRIPTOR_RE.match(text or "")
	if not match:
		raise ParameterError(f"cannot parse model descriptor {text!r}; expected e.g. \"poincare(g=4,n=1)\"")
	kind, g, n, m = match.group(1), int(match.group(2)), int(match.group(3)), match.group(4)
	if kind not in MODEL_KINDS:
		raise ParameterError(f"unknown model kind {kind!r}; expected one of {', '.join(MODEL_KINDS)}")
	if kind == LEVEL and m is None:
		raise ParameterError("a level model needs m, e.g. \"level(g=3,n=1,m=2)\"")
	if kind != LEVEL and m is not None:
		raise ParameterError(f"a {kind} model takes no m parameter")
	return make_model(kind, g, n, None if m is None else int(m))


def describe_model(model: RingModel) -> str:
	"""The canonical descriptor of a model, accepted back by parse_model_descriptor."""
	return model.describe()


def base_top_value(g: int, n: int, exponents: Tuple[int, int, int]) -> Fraction:
	"""
	The top intersection of mu^a alpha^b eta^c on B x C (a + b + c = g) for a
	monomial already reduced by eta^2 = 0 and alpha*eta = 0.
	"""
	_, b, c = exponents
	if c == 1 and b == 0:
		return Fraction(n * factorial(g - 1))
	if c == 0 and b == 2:
		return Fraction(-2 * n * factorial(g - 2))
	return Fraction(0)


def _top_value(model: RingModel, geometric: Monomial, fiber_ids: Tuple[int, ...]) -> Fraction:
	exponents = dict(geometric)
	base_exponents = (exponents.get(MU, 0), exponents.get(ALPHA, 0), exponents.get(ETA, 0))
	if model.kind == BASE:
		return base_top_value(model.g, model.n, base_exponents)
	fibers = [(gen, exp) for gen, exp in geometric if gen in fiber_ids]
	if not fibers:
		# top intersections of pullback classes vanish
		return Fraction(0)
	if len(fibers) != 1 or fibers[0][1] != 1:
		raise ModelInconsistencyError("black square", f"normal form kept the fiber monomial {geometric}")
	return base_top_value(model.g, model.n, base_exponents)


def evaluate_top_expr(model: RingModel, x: ClassExpr) -> ClassExpr:
	"""Top intersection of x as a class in the model's unknowns (a constant if there are none)."""
	table = model.table
	table.check_alphabet(x)
	# every input monomial, not only those surviving reduction
	for mono in x.monomials():
		degree = table.degree(table.split_unknowns(mono)[1])
		if degree < model.dimension:
			raise DegreeMismatchError(f"cannot evaluate a class of degree {degree} on {model.describe()}, "
									  f"top degree is {model.dimension}")
	reduced = model.normal_form(x)
	fiber_ids = model.fiber_ids
	acc = {}
	for mono, coeff in reduced.items():
		unknown, geometric = table.split_unknowns(mono)
		value = _top_value(model, geometric, fiber_ids)
		if value:
			acc[unknown] = acc.get(unknown, 0) + coeff * value
	return ClassExpr(acc)


def evaluate_top(model: RingModel, x: ClassExpr) -> Union[Fraction, ClassExpr]:
	"""
	Top intersection number of x. Returns a Fraction, or a ClassExpr in the
	unknowns when they survive.
	"""
	result = evaluate_top_expr(model, x)
	value = result.constant_value()
	return result if value is None else value


def section_class(model: RingModel, which: str, component: int = 0) -> ClassExpr:
	"""P_inf = xi and P_0 = xi + alpha (xi_i and xi_i + m*alpha on a level component)."""
	fiber = model.fiber(component)
	if which == INFINITY:
		return fiber
	if which == ZERO:
		return fiber + model.m * generator(ALPHA)
	raise ParameterError(f"unknown section {which!r}; expected '{ZERO}' or '{INFINITY}'")


def restrict_section(model: RingModel, x: ClassExpr, which: str, component: int = 0) -> ClassExpr:
	"""
	Restricts a divisor class to the zero or infinity section of a bundle
	component, identified with B x C. The result is expressed in the base
	model's alphabet.
	"""
	if model.kind == BASE:
		raise ModelKindError("sections exist only on poincare and level models")
	if which not in (ZERO, INFINITY):
		raise ParameterError(f"unknown section {which!r}; expected '{ZERO}' or '{INFINITY}'")
	if not 0 <= component < model.m:
		raise ParameterError(f"component {component} out of range 0..{model.m - 1}")
	reduced = model.normal_form(x)
	for mono in reduced.monomials():
		_, geometric = model.table.split_unknowns(mono)
		if model.table.degree(geometric) != 1:
			raise DegreeMismatchError("section restriction is defined on divisor classes only")
	images = {}
	for i, gen in enumerate(model.fiber_ids):
		if i == component and which == INFINITY:
			images[gen] = -model.m * generator(ALPHA)
		else:
			images[gen] = ClassExpr()
	return model.table.translate(substitute(reduced, images), model.base.table)


_SHIFT = {MU: generator(MU) + generator(ALPHA) + generator(ETA), ALPHA: generator(ALPHA) + 2 * generator(ETA)}
_SHIFT_INVERSE = {MU: generator(MU) - generator(ALPHA) + generator(ETA), ALPHA: generator(ALPHA) - 2 * generator(ETA)}


def shift_pullback(x: ClassExpr, N: int) -> ClassExpr:
	"""
	N-fold pullback under the shift (z, b) -> (z + b, b):
	mu -> mu + alpha + eta, alpha -> alpha + 2*eta, eta -> eta.
	Negative N applies the inverse.
	"""
	if isinstance(N, bool) or not isinstance(N, int):
		raise ParameterError(f"shift count must be an integer (got {N!r})")
	images = _SHIFT if N > 0 else _SHIFT_INVERSE
	for _ in range(abs(N)):
		x = substitute(x, images)
	return x


def shift_family(N: int) -> ClassExpr:
	"""mu_N = mu + N*alpha + N^2*eta."""
	return generator(MU) + N * generator(ALPHA) + N * N * generator(ETA)


def pair_with_curve(model: RingModel, x: ClassExpr, curve: str) -> Fraction:
	"""Intersection of a divisor over mu, eta, alpha with a test curve."""
	row = model.pairing.row(curve)
	coefficients = {MU: Fraction(0), ETA: Fraction(0), ALPHA: Fraction(0)}
	for mono, coeff in x.items():
		if len(mono) != 1 or mono[0][1] != 1 or mono[0][0] not in coefficients:
			raise AlphabetError(f"curve pairing is defined on divisors over {', '.join(PAIRING_COLUMNS)} only")
		coefficients[mono[0][0]] += coeff
	return row[0] * coefficients[MU] + row[1] * coefficients[ETA] + row[2] * coefficients[ALPHA]


def ns_generation_check(model: RingModel, pairing: Optional[CurvePairing] = None) -> int:
	"""Rank of the curve pairing over Q. Rank 3 means mu, eta, alpha are independent in NS."""
	return (pairing or model.pairing).rank()

