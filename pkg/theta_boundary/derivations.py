"""
The derivations run on the ring models: the universal theta class, the trick
for (xi + a*mu + b*alpha)^(g+1), the boundary ramification numbers with and
without level, and the relative tangent Chern class check.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple
import sympy
from .chow_models import (ALPHA, BASE, ETA, INFINITY, MU, POINCARE, ZERO, RingModel, check_parameters,
						  evaluate_top, evaluate_top_expr, make_level_ring, make_poincare_ring, restrict_section,
						  section_class, shift_pullback)
from .errors import ModelInconsistencyError, ModelKindError, SolverError
from .presented_ring import GeneratorTable, homogeneous_part
from .ring_core import ClassExpr, Monomial, constant, generator, render_rational, substitute

UNKNOWN_NAMES = ("c_xi", "c_mu", "c_alpha", "c_eta")


@dataclass(frozen=True)
class ThetaSolution:
	g: int
	n: int
	c_xi: Fraction
	c_mu: Fraction
	c_alpha: Fraction
	c_eta: Fraction
	residuals: Tuple[ClassExpr, ClassExpr]

	@property
	def coefficients(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
		return self.c_xi, self.c_mu, self.c_alpha, self.c_eta

	def as_dict(self) -> Dict[str, str]:
		return {name: render_rational(value) for name, value in zip(UNKNOWN_NAMES, self.coefficients)}


def _solver_model(g: int, n: int) -> RingModel:
	return make_poincare_ring(g, n, UNKNOWN_NAMES)


def _generic_divisor(model: RingModel) -> ClassExpr:
	# c_xi = 1: the limit theta divisor meets a general fiber once
	gen = model.gen
	return gen("xi") + gen("c_mu") * gen("mu") + gen("c_alpha") * gen("alpha") + gen("c_eta") * gen("eta")


def _group_by_geometric(x: ClassExpr, table: GeneratorTable) -> Dict[Monomial, ClassExpr]:
	groups: Dict[Monomial, Dict[Monomial, Fraction]] = {}
	for mono, coeff in x.items():
		unknown, geometric = table.split_unknowns(mono)
		group = groups.setdefault(geometric, {})
		group[unknown] = group.get(unknown, 0) + coeff
	return {geometric: ClassExpr(terms) for geometric, terms in groups.items()}


def _solve_linear(equations: Sequence[ClassExpr], table: GeneratorTable) -> Dict[int, Fraction]:
	"""Solves equations (each a linear class in unknowns, set to 0) for a unique solution."""
	unknowns = sorted({gen for equation in equations for gen in equation.generators()})
	rows, rhs = [], []
	for equation in equations:
		row = [Fraction(0)] * len(unknowns)
		const = Fraction(0)
		for mono, coeff in equation.items():
			if not mono:
				const += coeff
			elif len(mono) == 1 and mono[0][1] == 1:
				row[unknowns.index(mono[0][0])] += coeff
			else:
				raise SolverError(f"non-linear constraint {table.render(equation)} = 0")
		rows.append(row)
		rhs.append(-const)
	if not unknowns:
		if any(rhs):
			raise SolverError("inconsistent constraints: a non-zero constant must vanish")
		return {}

	def to_sympy(value: Fraction):
		return sympy.Rational(value.numerator, value.denominator)

	matrix = sympy.Matrix([[to_sympy(v) for v in row] for row in rows])
	target = sympy.Matrix([to_sympy(v) for v in rhs])
	try:
		solution, params = matrix.gauss_jordan_solve(target)
	except ValueError:
		raise SolverError("inconsistent theta constraints") from None
	if params.shape[0]:
		names = ", ".join(table.names[gen] for gen in unknowns)
		raise SolverError(f"theta constraints do not determine {names}")
	values = {}
	for gen, value in zip(unknowns, solution):
		value = sympy.Rational(value)
		values[gen] = Fraction(int(value.p), int(value.q))
	return values


def gluing_equations(g: int, n: int) -> Dict[str, ClassExpr]:
	"""
	D|P_0 - s*(D|P_inf) for the generic divisor, one linear form in the
	unknowns per base generator. Keys are "mu", "alpha", "eta".
	"""
	model = _solver_model(g, n)
	divisor = _generic_divisor(model)
	gluing = restrict_section(model, divisor, ZERO) - shift_pullback(restrict_section(model, divisor, INFINITY), 1)
	base_table = model.base.table
	groups = _group_by_geometric(gluing, base_table)
	return {name: groups.get(((gen, 1),), ClassExpr()) for gen, name in ((MU, "mu"), (ALPHA, "alpha"), (ETA, "eta"))}


@lru_cache(maxsize=None)
def solve_theta_coefficients(g: int, n: int) -> ThetaSolution:
	"""
	Solves for the class xi + c_mu*mu + c_alpha*alpha + c_eta*eta of the
	universal theta divisor. The restriction to P_0 must be the shift pullback
	of the restriction to P_inf, which fixes c_mu and c_alpha. The restriction
	to P_inf has vanishing top power, which fixes c_eta.
	"""
	check_parameters(g, n)
	model = _solver_model(g, n)
	base = model.base
	table = base.table
	divisor = _generic_divisor(model)
	at_infinity = restrict_section(model, divisor, INFINITY)
	gluing = restrict_section(model, divisor, ZERO) - shift_pullback(at_infinity, 1)

	values = _solve_linear(list(_group_by_geometric(gluing, table).values()), table)
	images = {gen: constant(value) for gen, value in values.items()}
	vanishing = evaluate_top_expr(base, base.power(substitute(at_infinity, images), g))
	values.update(_solve_linear([vanishing], table))

	c_xi, c_mu, c_alpha, c_eta = (table.index(name) for name in UNKNOWN_NAMES)
	missing = [table.names[gen] for gen in (c_mu, c_alpha, c_eta) if gen not in values]
	if missing:
		raise SolverError(f"theta constraints leave {', '.join(missing)} undetermined")
	images = {gen: constant(value) for gen, value in values.items()}
	images[c_xi] = constant(1)
	residuals = (
		substitute(gluing, images),
		evaluate_top_expr(base, base.power(substitute(at_infinity, images), g)),
	)
	if any(residual for residual in residuals):
		raise SolverError(f"theta constraints leave residuals {[table.render(r) for r in residuals]}")
	return ThetaSolution(g, n, Fraction(1), values[c_mu], values[c_alpha], values[c_eta], residuals)


def theta_class(model: RingModel, component: int = 0) -> ClassExpr:
	"""
	The universal theta divisor D = xi + mu + alpha/2 + eta/4 on a poincare
	model. On a level model, component i carries xi_i + m*mu + (m/2)*alpha + (m/4)*eta,
	since mu, alpha and eta pull back to m times themselves.
	"""
	if model.kind == BASE:
		raise ModelKindError("the theta class lives on poincare and level models")
	solution = solve_theta_coefficients(model.g, model.n)
	m = model.m
	return (solution.c_xi * model.fiber(component)
			+ m * solution.c_mu * generator(MU)
			+ m * solution.c_alpha * generator(ALPHA)
			+ m * solution.c_eta * generator(ETA))


def theta_restrictions(model: RingModel, component: int = 0) -> Tuple[ClassExpr, ClassExpr]:
	"""(D|P_0, D|P_inf) on B x C."""
	divisor = theta_class(model, component)
	return (restrict_section(model, divisor, ZERO, component),
			restrict_section(model, divisor, INFINITY, component))


def trick_T(a: Fraction, b: Fraction, g: int, n: int, check: bool = False) -> Fraction:
	"""
	(xi + a*mu + b*alpha)^(g+1) = -(n(g+1)!/3) * a^(g-2) * (b^3 - (b-1)^3).
	:param check: Also expand the power on the poincare model and compare.
	"""
	check_parameters(g, n)
	a, b = Fraction(a), Fraction(b)
	value = -Fraction(n * factorial(g + 1), 3) * a ** (g - 2) * (b ** 3 - (b - 1) ** 3)
	if check:
		expanded = trick_T_expansion(a, b, g, n)
		if expanded != value:
			raise ModelInconsistencyError("trick T", f"closed form {value} but expansion gives {expanded}")
	return value


def trick_T_expansion(a: Fraction, b: Fraction, g: int, n: int) -> Fraction:
	model = make_poincare_ring(g, n)
	x = model.gen("xi") + Fraction(a) * model.gen("mu") + Fraction(b) * model.gen("alpha")
	return evaluate_top(model, model.power(x, g + 1))


def relative_tangent_total_chern(model: RingModel) -> ClassExpr:
	"""
	c(T_{P/C}) = sum_i c_i(V) (1 + xi)^(r - i) for V = E + P of rank 2 with
	c(V) = 1 + alpha, before any relation is applied.
	"""
	if model.kind != POINCARE:
		raise ModelKindError("the relative tangent bundle is computed on the poincare model")
	xi = model.fiber()
	bundle_chern = [constant(1), model.gen("alpha")]
	rank = 2
	total = ClassExpr()
	for i, c_i in enumerate(bundle_chern):
		total = total + c_i * (1 + xi) ** (rank - i)
	return total


def chern_relative_tangent(model: RingModel) -> ClassExpr:
	"""
	The total Chern class of the relative tangent bundle, reduced: 1 + 2*xi + alpha.
	Every part of degree 2 or more must vanish, and the degree 1 part must be P_0 + P_inf.
	"""
	table = model.table
	reduced = model.normal_form(relative_tangent_total_chern(model))
	for degree in range(2, model.dimension + 1):
		part = homogeneous_part(reduced, degree, table)
		if part:
			raise ModelInconsistencyError("black square: xi^2 = -alpha*xi",
										  f"degree {degree} Chern class {table.render(part)} does not vanish")
	sections = section_class(model, ZERO) + section_class(model, INFINITY)
	if homogeneous_part(reduced, 1, table) != sections:
		raise ModelInconsistencyError("c(T) = P_0 + P_inf", f"first Chern class is {table.render(homogeneous_part(reduced, 1, table))}")
	return reduced


def ramification_number(model: RingModel, chern: Optional[ClassExpr] = None, theta_powers: Optional[Dict[int, ClassExpr]] = None) -> Fraction:
	"""
	Evaluates [sum_i c_i(1 + T_rel - (P_0 + P_inf)) D^(g-i)]_g * D. The bracketed
	virtual class is 1, so this is D^(g+1).
	:param theta_powers: Cache of reduced powers of D, filled in as needed.
	"""
	g = model.g
	table = model.table
	chern = chern if chern is not None else chern_relative_tangent(model)
	divisor = theta_class(model)
	theta_powers = theta_powers if theta_powers is not None else {}
	virtual = chern - (section_class(model, ZERO) + section_class(model, INFINITY))
	bracket = ClassExpr()
	for i in range(g + 1):
		c_i = homogeneous_part(virtual, i, table)
		if not c_i:
			continue
		if g - i not in theta_powers:
			theta_powers[g - i] = model.power(divisor, g - i)
		bracket = bracket + c_i * theta_powers[g - i]
	bracket = homogeneous_part(model.normal_form(bracket), g, table)
	return evaluate_top(model, model.product(bracket, divisor))


def boundary_closed_form(g: int, n: int) -> Fraction:
	return Fraction(n * factorial(g + 1), 6)


def mumford_boundary_number(g: int, n: int) -> Fraction:
	"""
	The ramification number n(g+1)!/6 of the universal semiabelian theta
	divisor over a test curve, computed as D^(g+1) on the poincare model.
	"""
	check_parameters(g, n)
	model = make_poincare_ring(g, n)
	theta_powers: Dict[int, ClassExpr] = {}
	via_ramification = ramification_number(model, theta_powers=theta_powers)
	divisor = theta_class(model)
	power_g = theta_powers[g] if g in theta_powers else model.power(divisor, g)
	direct = evaluate_top(model, model.product(power_g, divisor))
	expected = boundary_closed_form(g, n)
	if direct != expected or via_ramification != expected:
		raise ModelInconsistencyError("boundary coefficient n(g+1)!/6",
									  f"expected {expected}, D^(g+1) gives {direct}, ramification gives {via_ramification}")
	return direct


def mumford_decomposition(g: int, n: int) -> Tuple[Fraction, Fraction]:
	"""
	The two summands of D^(g+1): the eta term (g+1)*c_eta*eta*(xi + mu + alpha/2)^g,
	equal to n(g+1)!/4, and the trick term trick_T(1, 1/2).
	"""
	check_parameters(g, n)
	model = make_poincare_ring(g, n)
	solution = solve_theta_coefficients(g, n)
	without_eta = model.gen("xi") + solution.c_mu * model.gen("mu") + solution.c_alpha * model.gen("alpha")
	eta_term = evaluate_top(model, (g + 1) * solution.c_eta * model.product(model.gen("eta"), model.power(without_eta, g)))
	expected = Fraction(n * factorial(g + 1), 4)
	if eta_term != expected:
		raise ModelInconsistencyError("eta term n(g+1)!/4", f"expected {expected}, got {eta_term}")
	return eta_term, trick_T(solution.c_mu, solution.c_alpha, g, n, check=True)


def level_component_numbers(g: int, n: int, m: int) -> List[Fraction]:
	"""D_i^(g+1) for each component of the level family."""
	check_parameters(g, n, m)
	model = make_level_ring(g, n, m)
	return [evaluate_top(model, model.power(theta_class(model, i), g + 1)) for i in range(m)]


def level_branch_number(g: int, n: int, m: int) -> Fraction:
	"""
	Branch number sum_i D_i^(g+1) = m * (m^g * n(g+1)!/6) of the level-m theta
	divisor over a test curve.
	"""
	check_parameters(g, n, m)
	model = make_level_ring(g, n, m)
	total_class = ClassExpr()
	for i in range(m):
		total_class = total_class + model.power(theta_class(model, i), g + 1)
	total = evaluate_top(model, total_class)
	single = m ** g * boundary_closed_form(g, n)
	components = level_component_numbers(g, n, m)
	if any(value != single for value in components):
		raise ModelInconsistencyError("component independence of D_i^(g+1)",
									  f"expected {single} on every component, got {components}")
	expected = m * single
	if total != expected:
		raise ModelInconsistencyError("level branch number m^(g+1)*n(g+1)!/6", f"expected {expected}, got {total}")
	return total


@dataclass(frozen=True)
class PrimedRelation:
	label: str
	k: int
	value: Fraction
	expected: Fraction

	@property
	def passed(self) -> bool:
		return self.value == self.expected


def primed_relations(g: int, n: int, m: int) -> Tuple[PrimedRelation, ...]:
	"""
	Top intersections of mu' = m*mu, eta' = m*eta, alpha' = m*alpha on B x C:
	eta'*mu'^(g-1) and alpha'^k*mu'^(g-k) for every k, each m^g times its unprimed value.
	"""
	check_parameters(g, n, m)
	base = make_level_ring(g, n, m).base
	mu, alpha, eta = (m * generator(gen) for gen in (MU, ALPHA, ETA))
	relations = [PrimedRelation("diamond'", 1, evaluate_top(base, base.product(eta, base.power(mu, g - 1))),
								m ** g * n * factorial(g - 1))]
	for k in range(g + 1):
		value = evaluate_top(base, base.product(base.power(alpha, k), base.power(mu, g - k)))
		expected = -2 * m ** g * n * factorial(g - 2) if k == 2 else 0
		relations.append(PrimedRelation("heart'", k, value, Fraction(expected)))
	return tuple(relations)


def level_theta_residuals(g: int, n: int, m: int) -> List[Tuple[ClassExpr, Fraction, Fraction]]:
	"""
	For each level component: the gluing residual D_i|P_0 - s*(D_i|P_inf) and the
	top powers of both restrictions. All must vanish.
	"""
	check_parameters(g, n, m)
	model = make_level_ring(g, n, m)
	base = model.base
	residuals = []
	for i in range(m):
		at_zero, at_infinity = theta_restrictions(model, i)
		residuals.append((at_zero - shift_pullback(at_infinity, 1),
						  evaluate_top(base, base.power(at_zero, g)),
						  evaluate_top(base, base.power(at_infinity, g))))
	return residuals

