class ThetaBoundaryError(Exception):
	"""Base class for every error raised by theta_boundary."""


class ParameterError(ThetaBoundaryError, ValueError):
	"""Bad model parameters (g, n, m, N) or an unparseable model descriptor."""


class AlphabetError(ThetaBoundaryError, KeyError):
	"""A generator outside the alphabet of the active model."""

	def __str__(self):
		return str(self.args[0]) if self.args else ""


class DegreeMismatchError(ThetaBoundaryError, ValueError):
	"""A class of the wrong geometric degree for the requested operation."""


class RewriteError(ThetaBoundaryError):
	"""A malformed rewrite rule, or a rewrite system that fails its confluence check."""


class ModelKindError(ThetaBoundaryError, TypeError):
	"""An operation applied to a model of the wrong kind."""


class SolverError(ThetaBoundaryError, ArithmeticError):
	"""The theta constraints were inconsistent, underdetermined or non-linear."""


class ModelInconsistencyError(ThetaBoundaryError, AssertionError):
	"""
	A derivation that must cancel or match a closed form did not.
	:param relation: Name of the violated relation, e.g. "boundary coefficient n(g+1)!/6".
	"""

	def __init__(self, relation: str, detail: str = ""):
		self.relation = relation
		self.detail = detail
		message = f"violated {relation}"
		if detail:
			message += f": {detail}"
		super().__init__(message)


class ExprSyntaxError(ThetaBoundaryError, ValueError):
	"""
	Parse error in a class expression.
	:param position: 0-based offset into the source text.
	"""

	def __init__(self, message: str, position: int):
		self.position = position
		super().__init__(f"{message} (at position {position})")


class UnknownIdentifierError(ExprSyntaxError, AlphabetError):
	"""An identifier that is neither a generator nor a named class of the active model."""

	def __init__(self, name: str, position: int, model_description: str):
		self.name = name
		ExprSyntaxError.__init__(self, f"unknown identifier '{name}' for {model_description}", position)

	def __str__(self):
		return ExprSyntaxError.__str__(self)
