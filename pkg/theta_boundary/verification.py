"""
The invariant sweep behind `theta-boundary verify`: every check compares an
engine result with an exact expected value and yields a CheckRecord.
"""
import json
import multiprocessing as mp
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Tuple
from .chow_models import (ALPHA, CURVES, INFINITY, LEVEL, MU, PAIRING_COLUMNS, ZERO, evaluate_top, make_base_ring,
						  make_level_ring, make_poincare_ring, ns_generation_check, pair_with_curve, section_class, shift_family,
						  shift_pullback)
from .derivations import (boundary_closed_form, chern_relative_tangent, level_branch_number, level_theta_residuals,
						  mumford_boundary_number, mumford_decomposition, primed_relations, solve_theta_coefficients,
						  theta_class, theta_restrictions, trick_T)
from .errors import RewriteError, ThetaBoundaryError
from .oracle import brute_force_oracle, random_class, random_rational, random_top_class
from .presented_ring import check_local_confluence, normal_form
from .ring_core import generator, render_rational

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class CheckRecord:
	name: str
	params: str
	expected: str
	got: str
	passed: bool
	detail: str = ""

	@property
	def status(self) -> str:
		return PASS if self.passed else FAIL


def _show(value) -> str:
	if isinstance(value, (int, Fraction)):
		return render_rational(value)
	if isinstance(value, (tuple, list)):
		return "(" + ", ".join(_show(v) for v in value) + ")"
	return str(value)


def _check(name: str, params: str, expected, compute: Callable[[], object]) -> CheckRecord:
	try:
		got = compute()
	except ThetaBoundaryError as e:
		return CheckRecord(name, params, _show(expected), "error", False, str(e))
	return CheckRecord(name, params, _show(expected), _show(got), got == expected)


def _params(**kwargs) -> str:
	return ",".join(f"{key}={value}" for key, value in kwargs.items())


def check_intersection_table(nmax: int, **_) -> List[CheckRecord]:
	records = []
	for n in range(1, nmax + 1):
		model = make_base_ring(2, n)
		expected_rows = [[n, 0, 0], [0, n, 0], [n, n, 2 * n]]
		for curve, row in zip(CURVES, expected_rows):
			for column, expected in zip(PAIRING_COLUMNS, row):
				records.append(_check("intersection table", _params(n=n, curve=curve, divisor=column), Fraction(expected),
									  lambda: pair_with_curve(model, model.gen(column), curve)))
		records.append(_check("ns generation", _params(n=n), 3, lambda: ns_generation_check(model)))
	return records


def check_shift_family(gmax: int, **_) -> List[CheckRecord]:
	records = []
	for N in range(-5, 6):
		records.append(_check("shift family", _params(N=N), shift_family(N), lambda: shift_pullback(generator(MU), N)))
	for g in range(2, gmax + 1):
		base = make_base_ring(g, 1)
		for N in range(-5, 6):
			records.append(_check("shift family vanishing", _params(g=g, N=N), Fraction(0),
								  lambda: evaluate_top(base, base.power(shift_family(N), g))))
	return records


def check_theta_solver(gmax: int, nmax: int, **_) -> List[CheckRecord]:
	records = []
	expected = (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 4))
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			params = _params(g=g, n=n)
			records.append(_check("theta solver", params, expected, lambda: solve_theta_coefficients(g, n).coefficients))
			records.append(_check("theta residuals", params, True,
								  lambda: not any(solve_theta_coefficients(g, n).residuals)))

			def gluing():
				at_zero, at_infinity = theta_restrictions(make_poincare_ring(g, n))
				return at_zero == shift_pullback(at_infinity, 1)

			records.append(_check("theta gluing", params, True, gluing))
	return records


def check_section_vanishing(gmax: int, nmax: int, **_) -> List[CheckRecord]:
	records = []
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			model = make_poincare_ring(g, n)
			base = model.base
			at_zero, at_infinity = theta_restrictions(model)
			for which, restricted in ((ZERO, at_zero), (INFINITY, at_infinity)):
				records.append(_check("section vanishing", _params(g=g, n=n, section=which), Fraction(0),
									  lambda: evaluate_top(base, base.power(restricted, g))))
	return records


def check_trick(gmax: int, samples: int, seed: int, **_) -> List[CheckRecord]:
	rng = random.Random(seed)
	records = []
	for g in range(2, gmax + 1):
		for _ in range(samples):
			a, b = random_rational(rng), random_rational(rng)
			expected = -Fraction(factorial(g + 1), 3) * a ** (g - 2) * (b ** 3 - (b - 1) ** 3)
			records.append(_check("trick T", _params(g=g, n=1, a=_show(a), b=_show(b)), expected,
								  lambda: trick_T(a, b, g, 1, check=True)))
	return records


def check_mumford(gmax: int, nmax: int, **_) -> List[CheckRecord]:
	records = []
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			params = _params(g=g, n=n)
			expected = boundary_closed_form(g, n)
			records.append(_check("mumford boundary", params, expected, lambda: mumford_boundary_number(g, n)))
			records.append(_check("mumford decomposition", params, expected, lambda: sum(mumford_decomposition(g, n))))
	return records


def check_level(gmax: int, nmax: int, mmax: int, **_) -> List[CheckRecord]:
	records = []
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			for m in range(1, mmax + 1):
				params = _params(g=g, n=n, m=m)
				expected = m ** (g + 1) * boundary_closed_form(g, n)
				records.append(_check("level branch", params, expected, lambda: level_branch_number(g, n, m)))
				records.append(_check("level theta residuals", params, True,
									  lambda: all(not gluing and not top_zero and not top_inf
												  for gluing, top_zero, top_inf in level_theta_residuals(g, n, m))))
				records.append(_check("primed relations", params, True,
									  lambda: all(relation.passed for relation in primed_relations(g, n, m))))
	return records


def check_chern(gmax: int, nmax: int, **_) -> List[CheckRecord]:
	records = []
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			model = make_poincare_ring(g, n)
			expected = 1 + 2 * model.fiber() + generator(ALPHA)
			records.append(_check("chern cancellation", _params(g=g, n=n), model.render(expected),
								  lambda: model.render(chern_relative_tangent(model))))
	return records


def check_shift_invariance(gmax: int, samples: int, seed: int, **_) -> List[CheckRecord]:
	records = []
	rng = random.Random(seed + 2)
	for g in range(2, gmax + 1):
		base = make_base_ring(g, 1)
		for N in range(-5, 6):
			x = random_top_class(base, rng)
			records.append(_check("shift invariance", _params(g=g, N=N), evaluate_top(base, x),
								  lambda: evaluate_top(base, shift_pullback(x, N))))
	return records


def check_shift_adjointness(nmax: int, **_) -> List[CheckRecord]:
	records = []
	for n in range(1, nmax + 1):
		model = make_base_ring(2, n)
		records.append(_check("shift adjointness", _params(n=n), Fraction(4 * n),
							  lambda: pair_with_curve(model, shift_pullback(generator(ALPHA), 1), "delta_star")))
	return records


def check_section_product(gmax: int, nmax: int, mmax: int, **_) -> List[CheckRecord]:
	records = []
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			models = [make_poincare_ring(g, n)] + [make_level_ring(g, n, m) for m in range(1, mmax + 1)]
			for model in models:
				for i in range(model.m if model.kind == LEVEL else 1):
					records.append(_check("section product", _params(model=model.describe(), component=i), "0",
										  lambda: model.render(model.product(section_class(model, ZERO, i),
																			 section_class(model, INFINITY, i)))))
	return records


def check_level_poincare_agreement(gmax: int, nmax: int, samples: int, seed: int, **_) -> List[CheckRecord]:
	records = []
	rng = random.Random(seed + 3)
	renames = {"xi": "xi_0"}
	for g in range(2, gmax + 1):
		for n in range(1, nmax + 1):
			poincare, level = make_poincare_ring(g, n), make_level_ring(g, n, 1)
			params = _params(g=g, n=n)
			records.append(_check("level poincare theta", params, level.render(theta_class(level, 0)),
								  lambda: level.render(poincare.table.translate(theta_class(poincare), level.table, renames))))
			mismatches = 0
			for _ in range(samples):
				x = random_top_class(poincare, rng)
				if evaluate_top(poincare, x) != evaluate_top(level, poincare.table.translate(x, level.table, renames)):
					mismatches += 1
			records.append(_check("level poincare evaluation", params, 0, lambda: mismatches))
	return records


def _sample_models(gmax: int, mmax: int):
	g = min(gmax, 6)
	return [make_base_ring(g, 2), make_poincare_ring(g, 2), make_level_ring(g, 2, max(2, min(mmax, 3)))]


def check_rewrite(gmax: int, mmax: int, normal_form_samples: int, seed: int, **_) -> List[CheckRecord]:
	records = []
	rng = random.Random(seed)
	for model in _sample_models(gmax, mmax):
		params = model.describe()
		records.append(_check("local confluence", params, True, lambda: check_local_confluence(model.system).passed))
		order_failures, idempotence_failures, unbounded = 0, 0, 0
		for _ in range(normal_form_samples):
			x = random_class(model, rng)
			reduced = model.normal_form(x)
			try:
				shuffled = normal_form(x, model.system, rng=random.Random(rng.random()), max_steps=4 * model.dimension)
			except RewriteError:
				unbounded += 1
				continue
			if shuffled != reduced:
				order_failures += 1
			if model.normal_form(reduced) != reduced:
				idempotence_failures += 1
		records.append(_check("normal form order independence", params, 0, lambda: order_failures))
		records.append(_check("normal form idempotence", params, 0, lambda: idempotence_failures))
		records.append(_check("rewrite termination bound", params, 0, lambda: unbounded))
	return records


def check_oracle(gmax: int, mmax: int, oracle_samples: int, seed: int, **_) -> List[CheckRecord]:
	records = []
	rng = random.Random(seed + 1)
	for model in _sample_models(gmax, mmax):
		mismatches = []
		for _ in range(oracle_samples):
			x = random_top_class(model, rng)
			engine = evaluate_top(model, x)
			oracle = brute_force_oracle(model, x, seed=rng.randrange(1 << 30))
			if engine != oracle:
				mismatches.append(f"{model.render(x)}: {engine} != {oracle}")
		records.append(CheckRecord("oracle equivalence", model.describe(), "0 mismatches", f"{len(mismatches)} mismatches",
								   not mismatches, "; ".join(mismatches[:3])))
		if model.fiber_ids:
			divisor = theta_class(model)
			records.append(_check("oracle theta power", model.describe(), evaluate_top(model, model.power(divisor, model.dimension)),
								  lambda: brute_force_oracle(model, divisor, power=model.dimension, seed=seed)))
	return records


def check_performance(perf_g: int = 64, perf_seconds: float = 1.0, **_) -> List[CheckRecord]:
	start = time.perf_counter()
	try:
		value = mumford_boundary_number(perf_g, 1)
	except ThetaBoundaryError as e:
		return [CheckRecord("performance", _params(g=perf_g, n=1), f"< {perf_seconds}s", "error", False, str(e))]
	elapsed = time.perf_counter() - start
	passed = value == boundary_closed_form(perf_g, 1) and elapsed < perf_seconds
	return [CheckRecord("performance", _params(g=perf_g, n=1), f"< {perf_seconds}s", f"{elapsed:.3f}s", passed)]


CHECK_GROUPS: Dict[str, Callable[..., List[CheckRecord]]] = {
	"intersection table": check_intersection_table,
	"shift family": check_shift_family,
	"shift invariance": check_shift_invariance,
	"shift adjointness": check_shift_adjointness,
	"theta solver": check_theta_solver,
	"section vanishing": check_section_vanishing,
	"section product": check_section_product,
	"trick T": check_trick,
	"mumford boundary": check_mumford,
	"level branch": check_level,
	"level poincare agreement": check_level_poincare_agreement,
	"chern cancellation": check_chern,
	"rewrite soundness": check_rewrite,
	"oracle equivalence": check_oracle,
	"performance": check_performance,
}


def _run_group(item: Tuple[str, dict]) -> List[CheckRecord]:
	name, settings = item
	return CHECK_GROUPS[name](**settings)


def run_verification(gmax: int = 8, nmax: int = 3, mmax: int = 4, samples: int = 50, oracle_samples: int = 200,
					 normal_form_samples: int = 500, seed: int = 20240601, workers: int = 1,
					 perf_g: int = 64, perf_seconds: float = 1.0, groups=None) -> List[CheckRecord]:
	"""
	Runs the check groups and returns their records in group order.
	:param workers: More than one fans the groups out over a process pool.
	:param groups: Names from CHECK_GROUPS to run. All of them by default.
	"""
	settings = dict(gmax=gmax, nmax=nmax, mmax=mmax, samples=samples, oracle_samples=oracle_samples,
					normal_form_samples=normal_form_samples, seed=seed, perf_g=perf_g, perf_seconds=perf_seconds)
	items = [(name, settings) for name in (groups or CHECK_GROUPS)]
	if workers > 1:
		with mp.Pool(workers) as pool:
			results = pool.map(_run_group, items)
	else:
		results = [_run_group(item) for item in items]
	return [record for group in results for record in group]


def summarize(records: List[CheckRecord]) -> Dict[str, int]:
	failed = sum(1 for record in records if not record.passed)
	return {"total": len(records), "passed": len(records) - failed, "failed": failed}


def render_report(records: List[CheckRecord], fmt: str = "text") -> str:
	"""The report as JSON or as key=value lines, one per check, closed by a summary line."""
	summary = summarize(records)
	if fmt == "json":
		return json.dumps({"checks": [dict(asdict(record), status=record.status) for record in records],
						   "summary": summary}, indent=2)
	lines = []
	for record in records:
		line = f"check={record.name!r} params={record.params} expected={record.expected} got={record.got} status={record.status}"
		if record.detail:
			line += f" detail={record.detail!r}"
		lines.append(line)
	lines.append(f"summary: {summary['total']} checks, {summary['passed']} passed, {summary['failed']} failures")
	return "\n".join(lines)
