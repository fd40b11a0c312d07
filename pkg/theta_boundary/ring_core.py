"""
Exact rational coefficients and sparse commutative polynomials over a fixed,
finite generator alphabet.

Generators are small integer ids; names live in the GeneratorTable of the
model (see presented_ring). A monomial is a tuple of (generator id, exponent)
pairs sorted by id, never holding a zero exponent. A ClassExpr maps monomials
to Fractions and never stores a zero coefficient, so two ClassExprs are equal
exactly when their term mappings are.
"""
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union
from .errors import ParameterError

Monomial = Tuple[Tuple[int, int], ...]
Scalar = Union[int, Fraction]

ONE: Monomial = ()

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def make_monomial(exponents: Mapping[int, int]) -> Monomial:
	"""Builds a monomial from a generator id -> exponent mapping, dropping zero exponents."""
	for gen, exp in exponents.items():
		if exp < 0:
			raise ParameterError(f"negative exponent {exp} for generator {gen}")
	return tuple(sorted((gen, exp) for gen, exp in exponents.items() if exp))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
	if not a:
		return b
	if not b:
		return a
	merged = dict(a)
	for gen, exp in b:
		merged[gen] = merged.get(gen, 0) + exp
	return tuple(sorted(merged.items()))


def monomial_divides(pattern: Monomial, mono: Monomial) -> bool:
	exponents = dict(mono)
	return all(exponents.get(gen, 0) >= exp for gen, exp in pattern)


def monomial_quotient(mono: Monomial, pattern: Monomial) -> Monomial:
	"""mono / pattern. The caller guarantees that pattern divides mono."""
	exponents = dict(mono)
	for gen, exp in pattern:
		exponents[gen] -= exp
	return tuple((gen, exp) for gen, exp in sorted(exponents.items()) if exp)


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
	exponents = dict(a)
	for gen, exp in b:
		exponents[gen] = max(exponents.get(gen, 0), exp)
	return tuple(sorted(exponents.items()))


def monomial_degree(mono: Monomial, weights: Sequence[int]) -> int:
	"""Geometric degree: exponents weighted by generator degree (unknowns weigh 0)."""
	return sum(weights[gen] * exp for gen, exp in mono)


def monomial_exponent(mono: Monomial, gen: int) -> int:
	for g, exp in mono:
		if g == gen:
			return exp
	return 0


def monomial_generators(mono: Monomial) -> frozenset:
	return frozenset(gen for gen, _ in mono)


class ClassExpr:
	"""
	An exact-rational linear combination of monomials: the currency of every
	computation in the package. Instances are immutable.
	"""
	__slots__ = ("_terms", "_hash")

	def __init__(self, terms: Optional[Union[Mapping[Monomial, Scalar], Iterable[Tuple[Monomial, Scalar]]]] = None):
		merged: Dict[Monomial, Fraction] = {}
		if terms:
			items = terms.items() if isinstance(terms, Mapping) else terms
			for mono, coeff in items:
				merged[mono] = merged.get(mono, 0) + Fraction(coeff)
		self._terms = {mono: coeff for mono, coeff in merged.items() if coeff}
		self._hash = None

	@classmethod
	def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "ClassExpr":
		expr = cls.__new__(cls)
		expr._terms = terms
		expr._hash = None
		return expr

	@property
	def terms(self) -> Mapping[Monomial, Fraction]:
		return MappingProxyType(self._terms)

	def items(self):
		return self._terms.items()

	def monomials(self):
		return self._terms.keys()

	def coefficient(self, mono: Monomial) -> Fraction:
		return self._terms.get(mono, Fraction(0))

	def is_zero(self) -> bool:
		return not self._terms

	def constant_value(self) -> Optional[Fraction]:
		"""The value of a constant class (zero included), or None if any generator appears."""
		if not self._terms:
			return Fraction(0)
		if len(self._terms) == 1 and ONE in self._terms:
			return self._terms[ONE]
		return None

	def generators(self) -> frozenset:
		return frozenset(gen for mono in self._terms for gen, _ in mono)

	def __len__(self):
		return len(self._terms)

	def __bool__(self):
		return bool(self._terms)

	def __iter__(self):
		return iter(self._terms)

	def __eq__(self, other):
		if isinstance(other, (int, Fraction)):
			other = constant(other)
		if not isinstance(other, ClassExpr):
			return NotImplemented
		return self._terms == other._terms

	def __hash__(self):
		if self._hash is None:
			self._hash = hash(frozenset(self._terms.items()))
		return self._hash

	def __repr__(self):
		body = ", ".join(f"{mono!r}: {coeff}" for mono, coeff in self._terms.items())
		return f"ClassExpr({{{body}}})"

	def __neg__(self):
		return ClassExpr._from_clean({mono: -coeff for mono, coeff in self._terms.items()})

	def __add__(self, other):
		other = _coerce(other)
		if other is None:
			return NotImplemented
		return add(self, other)

	__radd__ = __add__

	def __sub__(self, other):
		other = _coerce(other)
		if other is None:
			return NotImplemented
		return add(self, -other)

	def __rsub__(self, other):
		other = _coerce(other)
		if other is None:
			return NotImplemented
		return add(other, -self)

	def __mul__(self, other):
		if isinstance(other, (int, Fraction)):
			return scale(self, other)
		if not isinstance(other, ClassExpr):
			return NotImplemented
		return mul(self, other)

	__rmul__ = __mul__

	def __truediv__(self, other):
		if not isinstance(other, (int, Fraction)):
			return NotImplemented
		return scale(self, Fraction(1) / Fraction(other))

	def __pow__(self, k):
		return power(self, k)


def _coerce(value) -> Optional[ClassExpr]:
	if isinstance(value, ClassExpr):
		return value
	if isinstance(value, (int, Fraction)):
		return constant(value)
	return None


def _accumulate(acc: Dict[Monomial, Fraction], mono: Monomial, coeff: Fraction):
	total = acc.get(mono, 0) + coeff
	if total:
		acc[mono] = total
	else:
		acc.pop(mono, None)


def constant(value: Scalar) -> ClassExpr:
	value = Fraction(value)
	return ClassExpr._from_clean({ONE: value} if value else {})


def generator(gen: int) -> ClassExpr:
	return ClassExpr._from_clean({((gen, 1),): Fraction(1)})


def add(a: ClassExpr, b: ClassExpr) -> ClassExpr:
	"""Termwise sum in canonical form."""
	if len(a) < len(b):
		a, b = b, a
	acc = dict(a._terms)
	for mono, coeff in b.items():
		_accumulate(acc, mono, coeff)
	return ClassExpr._from_clean(acc)


def neg(a: ClassExpr) -> ClassExpr:
	return -a


def sub(a: ClassExpr, b: ClassExpr) -> ClassExpr:
	return add(a, -b)


def scale(a: ClassExpr, factor: Scalar) -> ClassExpr:
	factor = Fraction(factor)
	if not factor:
		return ClassExpr()
	return ClassExpr._from_clean({mono: coeff * factor for mono, coeff in a.items()})


def mul(a: ClassExpr, b: ClassExpr) -> ClassExpr:
	"""Free commutative product. No relations are applied."""
	acc: Dict[Monomial, Fraction] = {}
	for mono_a, coeff_a in a.items():
		for mono_b, coeff_b in b.items():
			_accumulate(acc, monomial_mul(mono_a, mono_b), coeff_a * coeff_b)
	return ClassExpr._from_clean(acc)


def power(a: ClassExpr, k: int) -> ClassExpr:
	"""a^k in the free ring, by repeated squaring. power(a, 0) is 1."""
	if not isinstance(k, int) or k < 0:
		raise ParameterError(f"exponent must be a non-negative integer (got {k!r})")
	result = constant(1)
	base = a
	while k:
		if k & 1:
			result = mul(result, base)
		k >>= 1
		if k:
			base = mul(base, base)
	return result


def substitute(x: ClassExpr, images: Mapping[int, ClassExpr]) -> ClassExpr:
	"""
	Applies the ring endomorphism sending each generator in images to its image.
	Generators without an image are left alone.
	"""
	power_cache: Dict[Tuple[int, int], ClassExpr] = {}

	def image_power(gen: int, exp: int) -> ClassExpr:
		key = (gen, exp)
		if key not in power_cache:
			if gen in images:
				power_cache[key] = power(images[gen], exp)
			else:
				power_cache[key] = ClassExpr._from_clean({((gen, exp),): Fraction(1)})
		return power_cache[key]

	acc: Dict[Monomial, Fraction] = {}
	for mono, coeff in x.items():
		term = constant(coeff)
		for gen, exp in mono:
			term = mul(term, image_power(gen, exp))
		for term_mono, term_coeff in term.items():
			_accumulate(acc, term_mono, term_coeff)
	return ClassExpr._from_clean(acc)


def parse_rational(text: str) -> Fraction:
	"""Parses "p/q" or "p" with a positive denominator."""
	match = _RATIONAL_RE.match(text)
	if not match:
		raise ParameterError(f"not a rational number: {text!r}")
	numerator = int(match.group(1))
	denominator = int(match.group(2)) if match.group(2) is not None else 1
	if denominator == 0:
		raise ParameterError(f"zero denominator in {text!r}")
	return Fraction(numerator, denominator)


def render_rational(value: Scalar) -> str:
	value = Fraction(value)
	if value.denominator == 1:
		return str(value.numerator)
	return f"{value.numerator}/{value.denominator}"


def _sort_key(mono: Monomial, weights: Sequence[int]):
	dense = [0] * len(weights)
	for gen, exp in mono:
		dense[gen] = exp
	return monomial_degree(mono, weights), tuple(-exp for exp in dense)


def render_monomial(mono: Monomial, names: Sequence[str]) -> str:
	return "*".join(names[gen] if exp == 1 else f"{names[gen]}^{exp}" for gen, exp in mono)


def render(x: ClassExpr, names: Sequence[str], weights: Sequence[int]) -> str:
	"""
	Canonical text form: terms sorted by (degree, generator order), coefficients
	as "p/q" or integers, e.g. "mu + 1/2*alpha + 1/4*eta + xi".
	"""
	if x.is_zero():
		return "0"
	pieces = []
	for mono in sorted(x.monomials(), key=lambda m: _sort_key(m, weights)):
		coeff = x.coefficient(mono)
		magnitude = abs(coeff)
		if not mono:
			body = render_rational(magnitude)
		elif magnitude == 1:
			body = render_monomial(mono, names)
		else:
			body = f"{render_rational(magnitude)}*{render_monomial(mono, names)}"
		if not pieces:
			pieces.append(f"-{body}" if coeff < 0 else body)
		else:
			pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
	return "".join(pieces)
