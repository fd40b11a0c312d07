"""
Recursive descent parser for class expressions typed on the command line.

	expr   := term (('+' | '-') term)*
	term   := factor ('*' factor)*
	factor := '-' factor | atom ('^' nat)?
	atom   := rational | ident | '(' expr ')'
	rational := int ('/' posint)?

Identifiers are the generators of the active model (mu, alpha, eta, xi,
xi_0..xi_{m-1}) and its named classes: D, P0, Pinf on a poincare model and
D_i, P0_i, Pinf_i on a level model. Implicit multiplication is rejected.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Union
from .chow_models import INFINITY, LEVEL, POINCARE, ZERO, RingModel, section_class
from .derivations import theta_class
from .errors import DegreeMismatchError, ExprSyntaxError, UnknownIdentifierError
from .ring_core import ClassExpr, constant, mul, power

INT = "int"
IDENT = "ident"
OP = "op"
END = "end"

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_OPERATORS = set("+-*/^()")


@dataclass(frozen=True)
class Token:
	kind: str
	text: str
	position: int


def tokenize(src: str) -> List[Token]:
	tokens = []
	for match in _TOKEN_RE.finditer(src):
		number, ident, other = match.groups()
		if number is not None:
			tokens.append(Token(INT, number, match.start(1)))
		elif ident is not None:
			tokens.append(Token(IDENT, ident, match.start(2)))
		elif other is not None:
			if other not in _OPERATORS:
				raise ExprSyntaxError(f"unexpected character {other!r}", match.start(3))
			tokens.append(Token(OP, other, match.start(3)))
	tokens.append(Token(END, "", len(src)))
	return tokens


@dataclass(frozen=True)
class RationalLiteral:
	value: Fraction
	position: int


@dataclass(frozen=True)
class GeneratorName:
	name: str
	position: int


@dataclass(frozen=True)
class NamedConstant:
	name: str
	position: int


@dataclass(frozen=True)
class Negation:
	operand: "ExprAst"


@dataclass(frozen=True)
class Sum:
	left: "ExprAst"
	right: "ExprAst"


@dataclass(frozen=True)
class Difference:
	left: "ExprAst"
	right: "ExprAst"


@dataclass(frozen=True)
class Product:
	left: "ExprAst"
	right: "ExprAst"


@dataclass(frozen=True)
class Power:
	base: "ExprAst"
	exponent: int


ExprAst = Union[RationalLiteral, GeneratorName, NamedConstant, Negation, Sum, Difference, Product, Power]


def named_constants(model: RingModel) -> Dict[str, Callable[[], ClassExpr]]:
	"""Named classes of a model, built lazily since D needs the theta solver."""
	if model.kind == POINCARE:
		return {
			"D": lambda: theta_class(model),
			"P0": lambda: section_class(model, ZERO),
			"Pinf": lambda: section_class(model, INFINITY),
		}
	if model.kind == LEVEL:
		named = {}
		for i in range(model.m):
			named[f"D_{i}"] = lambda i=i: theta_class(model, i)
			named[f"P0_{i}"] = lambda i=i: section_class(model, ZERO, i)
			named[f"Pinf_{i}"] = lambda i=i: section_class(model, INFINITY, i)
		return named
	return {}


class _Parser:

	def __init__(self, src: str, model: RingModel):
		self.tokens = tokenize(src)
		self.index = 0
		self.model = model
		self.named = named_constants(model)

	@property
	def current(self) -> Token:
		return self.tokens[self.index]

	def advance(self) -> Token:
		token = self.tokens[self.index]
		self.index += 1
		return token

	def at_op(self, *ops: str) -> bool:
		return self.current.kind == OP and self.current.text in ops

	def expect_op(self, op: str) -> Token:
		if not self.at_op(op):
			raise ExprSyntaxError(f"expected '{op}' but found {self.describe(self.current)}", self.current.position)
		return self.advance()

	@staticmethod
	def describe(token: Token) -> str:
		return "end of input" if token.kind == END else repr(token.text)

	def parse(self) -> ExprAst:
		if self.current.kind == END:
			raise ExprSyntaxError("empty expression", self.current.position)
		node = self.expr()
		token = self.current
		if token.kind != END:
			if token.kind in (INT, IDENT) or self.at_op("("):
				raise ExprSyntaxError("implicit multiplication is not supported; use '*'", token.position)
			raise ExprSyntaxError(f"unexpected {self.describe(token)}", token.position)
		return node

	def expr(self) -> ExprAst:
		node = self.term()
		while self.at_op("+", "-"):
			op = self.advance().text
			right = self.term()
			node = Sum(node, right) if op == "+" else Difference(node, right)
		return node

	def term(self) -> ExprAst:
		node = self.factor()
		while self.at_op("*"):
			self.advance()
			node = Product(node, self.factor())
		return node

	def factor(self) -> ExprAst:
		if self.at_op("-"):
			self.advance()
			return Negation(self.factor())
		node = self.atom()
		if self.at_op("^"):
			self.advance()
			token = self.current
			if token.kind != INT:
				raise ExprSyntaxError("exponent must be a non-negative integer literal", token.position)
			self.advance()
			node = Power(node, int(token.text))
		return node

	def atom(self) -> ExprAst:
		token = self.current
		if token.kind == INT:
			self.advance()
			if self.at_op("/"):
				self.advance()
				denominator = self.current
				if denominator.kind != INT:
					raise ExprSyntaxError("division is only allowed inside a rational literal p/q", denominator.position)
				if int(denominator.text) == 0:
					raise ExprSyntaxError("zero denominator", denominator.position)
				self.advance()
				return RationalLiteral(Fraction(int(token.text), int(denominator.text)), token.position)
			return RationalLiteral(Fraction(int(token.text)), token.position)
		if token.kind == IDENT:
			self.advance()
			if token.text in self.model.table:
				return GeneratorName(token.text, token.position)
			if token.text in self.named:
				return NamedConstant(token.text, token.position)
			raise UnknownIdentifierError(token.text, token.position, self.model.describe())
		if self.at_op("("):
			self.advance()
			node = self.expr()
			self.expect_op(")")
			return node
		if self.at_op("/"):
			raise ExprSyntaxError("division is only allowed inside a rational literal p/q", token.position)
		raise ExprSyntaxError(f"unexpected {self.describe(token)}", token.position)


def parse_ast(src: str, model: RingModel) -> ExprAst:
	return _Parser(src, model).parse()


def lower(node: ExprAst, model: RingModel, reduce: bool = False) -> ClassExpr:
	"""
	Turns an ExprAst into a ClassExpr.
	:param reduce: Multiply in the model (normal form after every product) instead of in the free ring.
	"""
	if isinstance(node, RationalLiteral):
		return constant(node.value)
	if isinstance(node, GeneratorName):
		return model.gen(node.name)
	if isinstance(node, NamedConstant):
		return named_constants(model)[node.name]()
	if isinstance(node, Negation):
		return -lower(node.operand, model, reduce)
	if isinstance(node, Sum):
		return lower(node.left, model, reduce) + lower(node.right, model, reduce)
	if isinstance(node, Difference):
		return lower(node.left, model, reduce) - lower(node.right, model, reduce)
	if isinstance(node, Product):
		left, right = lower(node.left, model, reduce), lower(node.right, model, reduce)
		return model.product(left, right) if reduce else mul(left, right)
	if isinstance(node, Power):
		base = lower(node.base, model, reduce)
		return model.power(base, node.exponent) if reduce else power(base, node.exponent)
	raise TypeError(f"not an expression node: {node!r}")


def _below(x: ClassExpr, model: RingModel) -> ClassExpr:
	table = model.table
	return ClassExpr({mono: coeff for mono, coeff in x.items()
					  if table.degree(table.split_unknowns(mono)[1]) < model.dimension})


def _min_degree(x: ClassExpr, model: RingModel) -> int:
	table = model.table
	return min(table.degree(table.split_unknowns(mono)[1]) for mono in x.monomials())


def low_degree_part(node: ExprAst, model: RingModel) -> ClassExpr:
	"""
	The terms of node's free-ring expansion below the model's top degree,
	computed without expanding anything at or above it.
	"""
	if isinstance(node, Negation):
		return -low_degree_part(node.operand, model)
	if isinstance(node, Sum):
		return low_degree_part(node.left, model) + low_degree_part(node.right, model)
	if isinstance(node, Difference):
		return low_degree_part(node.left, model) - low_degree_part(node.right, model)
	if isinstance(node, Product):
		left = low_degree_part(node.left, model)
		if not left:
			return left
		return _below(mul(left, low_degree_part(node.right, model)), model)
	if isinstance(node, Power):
		base = low_degree_part(node.base, model)
		if node.exponent == 0:
			return constant(1)
		if not base or _min_degree(base, model) * node.exponent >= model.dimension:
			return ClassExpr()
		result, k = constant(1), node.exponent
		while k:
			if k & 1:
				result = _below(mul(result, base), model)
			k >>= 1
			if k:
				base = _below(mul(base, base), model)
		return result
	return _below(lower(node, model), model)


def check_top_degree(node: ExprAst, model: RingModel):
	"""Raises DegreeMismatchError unless node expands to a class of pure top degree (or above)."""
	low = low_degree_part(node, model)
	if low:
		degree = _min_degree(low, model)
		raise DegreeMismatchError(f"cannot evaluate a class of degree {degree} on {model.describe()}, "
								  f"top degree is {model.dimension}")


def parse_expr(src: str, model: RingModel, reduce: bool = False) -> ClassExpr:
	"""Parses src against the alphabet of model. See the module docstring for the grammar."""
	return lower(parse_ast(src, model), model, reduce)
