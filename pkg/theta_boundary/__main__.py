import sys
import json
from functools import wraps
import click
from .chow_models import (CURVES, describe_model, evaluate_top, make_poincare_ring, pair_with_curve,
						  parse_model_descriptor)
from .config import delete_config_file, get_config, get_verify_settings, safe_create_config, show_config
from .constants import ProjInfo
from .derivations import (chern_relative_tangent, level_branch_number, level_component_numbers, mumford_boundary_number,
						  mumford_decomposition, solve_theta_coefficients, trick_T)
from .errors import (AlphabetError, DegreeMismatchError, ExprSyntaxError, ModelInconsistencyError, ModelKindError,
					 ParameterError, RewriteError, SolverError)
from .expr_parser import check_top_degree, lower, parse_ast, parse_expr
from .presented_ring import check_local_confluence, homogeneous_part
from .printing import (log, log_value, print_banner, print_check_result, print_green_bold, print_red_bold,
					   print_version_info, set_verbose)
from .ring_core import ClassExpr, parse_rational, render_rational
from .upgrade import check_if_config_upgrade_needed
from .utils import check_if_path_is_valid_file_target, expand_to_abs_path, write_text_file
from .verification import render_report, run_verification, summarize

FORMATS = click.Choice(["text", "json"])

USAGE_ERRORS = (ParameterError, ExprSyntaxError, AlphabetError, ModelKindError, DegreeMismatchError, RewriteError)
ASSERTION_ERRORS = (ModelInconsistencyError, SolverError)


def handle_errors(command):
	"""Turns library errors into a red message and exit code 2 (usage) or 1 (failed assertion)."""
	@wraps(command)
	def wrapper(*args, **kwargs):
		try:
			return command(*args, **kwargs)
		except ASSERTION_ERRORS as e:
			print_red_bold(f"ERROR: {e}")
			sys.exit(1)
		except USAGE_ERRORS as e:
			print_red_bold(f"ERROR: {e}")
			sys.exit(2)
	return wrapper


def emit(fmt, values: dict, scalar_key=None):
	"""
	Prints a result uncolored: JSON object, or key=value lines in text mode.
	:param scalar_key: In text mode, print only this value, bare.
	"""
	if fmt == "json":
		print(json.dumps(values, separators=(",", ":")))
	elif scalar_key is not None:
		print(values[scalar_key])
	else:
		for key, value in values.items():
			print(f"{key}={value}")


def resolve_model(ctx, descriptor):
	model = parse_model_descriptor(descriptor or ctx.obj["default_model"])
	log_value("Model:", describe_model(model))
	log_value("Rules:", "; ".join(rule.describe(model.table) for rule in model.system.rules))
	if ctx.obj.get("verbose"):
		log(check_local_confluence(model.system).render(model.table))
	return model


def resolve_format(ctx, fmt):
	return fmt or ctx.obj["default_format"]


def render_value(model, value) -> str:
	if isinstance(value, ClassExpr):
		return model.render(value)
	return render_rational(value)


# custom help options
@click.group(invoke_without_command=True, context_settings=dict(help_option_names=['-h', '-help', '--help']))
@click.option('-verbose', '--verbose', is_flag=True, default=False, help="Give verbose output.")
@click.option('--version', '-v', is_flag=True, default=False, help='Display version and author info.')
@click.pass_context
def cli(ctx, verbose, version):
	"""
	\b
	Exact intersection numbers on the universal semiabelian family over a test curve.
	Evaluate class expressions, solve for the theta class, and check the boundary numbers.
	"""
	set_verbose(verbose)
	safe_create_config()
	check_if_config_upgrade_needed()
	ctx.obj = dict(get_config(), verbose=verbose)

	if version:
		print_version_info()
		sys.exit()
	if ctx.invoked_subcommand is None:
		click.echo(ctx.get_help())


@cli.command("eval")
@click.argument('expr')
@click.option('--model', default=None, help='Model descriptor, e.g. "poincare(g=4,n=1)".')
@click.option('--top', is_flag=True, default=False, help="Evaluate the top intersection number.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def eval_command(ctx, expr, model, top, fmt):
	"""Parse EXPR, reduce it, and optionally take its top intersection number."""
	model = resolve_model(ctx, model)
	tree = parse_ast(expr, model)
	if top:
		check_top_degree(tree, model)
	reduced = model.normal_form(lower(tree, model, reduce=True))
	value = evaluate_top(model, reduced) if top else reduced
	emit(resolve_format(ctx, fmt), {"model": describe_model(model), "expr": expr, "value": render_value(model, value)}, "value")


@cli.command("nf")
@click.argument('expr')
@click.option('--model', default=None, help='Model descriptor, e.g. "level(g=3,n=1,m=2)".')
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def nf_command(ctx, expr, model, fmt):
	"""Print the canonical normal form of EXPR."""
	model = resolve_model(ctx, model)
	reduced = model.normal_form(parse_expr(expr, model, reduce=True))
	emit(resolve_format(ctx, fmt), {"model": describe_model(model), "expr": expr, "normal_form": model.render(reduced)}, "normal_form")


@cli.command("solve-theta")
@click.option('--g', type=int, required=True, help="Dimension of the abelian varieties.")
@click.option('--n', type=int, default=1, help="Degree of the test curve's discriminant.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def solve_theta_command(ctx, g, n, fmt):
	"""Solve for the coefficients of the universal theta class."""
	solution = solve_theta_coefficients(g, n)
	emit(resolve_format(ctx, fmt), solution.as_dict())


@cli.command("mumford")
@click.option('--g', type=int, required=True, help="Dimension of the abelian varieties.")
@click.option('--n', type=int, default=1, help="Degree of the test curve's discriminant.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def mumford_command(ctx, g, n, fmt):
	"""Boundary ramification number n(g+1)!/6 of the theta divisor."""
	value = mumford_boundary_number(g, n)
	eta_term, trick_term = mumford_decomposition(g, n)
	log_value("Eta term:", render_rational(eta_term))
	log_value("Trick term:", render_rational(trick_term))
	emit(resolve_format(ctx, fmt), {"g": g, "n": n, "boundary_number": render_rational(value)}, "boundary_number")


@cli.command("level-branch")
@click.option('--g', type=int, required=True, help="Dimension of the abelian varieties.")
@click.option('--n', type=int, default=1, help="Degree of the test curve's discriminant.")
@click.option('--m', type=int, required=True, help="Level.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def level_branch_command(ctx, g, n, m, fmt):
	"""Branch number of the level-m theta divisor, summed over components."""
	value = level_branch_number(g, n, m)
	for i, component in enumerate(level_component_numbers(g, n, m)):
		log_value(f"Component {i}:", render_rational(component))
	emit(resolve_format(ctx, fmt), {"g": g, "n": n, "m": m, "branch_number": render_rational(value)}, "branch_number")


@cli.command("pair")
@click.argument('expr')
@click.option('--curve', type=click.Choice(CURVES), required=True, help="Test curve.")
@click.option('--model', default=None, help='Model descriptor, e.g. "base(g=3,n=2)".')
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def pair_command(ctx, expr, curve, model, fmt):
	"""Intersect a divisor over mu, eta, alpha with a test curve."""
	model = resolve_model(ctx, model)
	value = pair_with_curve(model, parse_expr(expr, model), curve)
	emit(resolve_format(ctx, fmt), {"curve": curve, "expr": expr, "value": render_rational(value)}, "value")


@cli.command("trick")
@click.option('--a', 'a_text', required=True, help="Coefficient of mu, as p/q.")
@click.option('--b', 'b_text', required=True, help="Coefficient of alpha, as p/q.")
@click.option('--g', type=int, required=True, help="Dimension of the abelian varieties.")
@click.option('--n', type=int, default=1, help="Degree of the test curve's discriminant.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def trick_command(ctx, a_text, b_text, g, n, fmt):
	"""Closed form of (xi + a*mu + b*alpha)^(g+1), checked against the expansion."""
	value = trick_T(parse_rational(a_text), parse_rational(b_text), g, n, check=True)
	emit(resolve_format(ctx, fmt), {"a": a_text, "b": b_text, "g": g, "n": n, "value": render_rational(value)}, "value")


@cli.command("chern")
@click.option('--g', type=int, required=True, help="Dimension of the abelian varieties.")
@click.option('--n', type=int, default=1, help="Degree of the test curve's discriminant.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def chern_command(ctx, g, n, fmt):
	"""Total Chern class of the relative tangent bundle of the P^1-bundle."""
	model = make_poincare_ring(g, n)
	log_value("Model:", describe_model(model))
	reduced = chern_relative_tangent(model)
	values = {"total": model.render(reduced)}
	for degree in range(model.dimension + 1):
		values[f"c{degree}"] = model.render(homogeneous_part(reduced, degree, model.table))
	emit(resolve_format(ctx, fmt), values)


@cli.command("verify")
@click.option('--gmax', type=int, default=None, help="Largest g to sweep.")
@click.option('--nmax', type=int, default=None, help="Largest n to sweep.")
@click.option('--mmax', type=int, default=None, help="Largest level m to sweep.")
@click.option('--samples', type=int, default=None, help="Random (a, b) pairs per g for the trick check.")
@click.option('--seed', type=int, default=None, help="Seed for the random checks.")
@click.option('--workers', type=int, default=None, help="Processes to fan the check groups out over.")
@click.option('--output', default=None, help="Also write the report to this path.")
@click.option('--format', 'fmt', type=FORMATS, default=None, help="Output format.")
@click.pass_context
@handle_errors
def verify_command(ctx, gmax, nmax, mmax, samples, seed, workers, output, fmt):
	"""Run the invariant sweep and print a summary."""
	settings = get_verify_settings(ctx.obj)
	overrides = dict(gmax=gmax, nmax=nmax, mmax=mmax, samples=samples, seed=seed, workers=workers)
	settings.update({key: value for key, value in overrides.items() if value is not None})
	fmt = resolve_format(ctx, fmt)
	if output is not None and not check_if_path_is_valid_file_target(expand_to_abs_path(output)):
		sys.exit(2)
	if ctx.obj.get("verbose"):
		print_banner()
		log_value("Settings:", settings)

	records = run_verification(**settings)
	if ctx.obj.get("verbose"):
		for record in records:
			print_check_result(record.name, record.params, record.passed, record.detail)
	report = render_report(records, fmt)
	print(report)
	if output is not None:
		log_value("Report written to:", write_text_file(output, report))

	summary = summarize(records)
	if summary["failed"]:
		print_red_bold(f"{summary['failed']} of {summary['total']} checks failed.")
		sys.exit(1)
	if fmt != "json":
		print_green_bold(f"All {summary['total']} checks passed.")


@cli.command("show-config")
def show_config_command():
	"""Display config file."""
	show_config()


@cli.command("delete-config")
def delete_config_command():
	"""Delete config file."""
	delete_config_file()


def run_command(argv) -> int:
	"""Runs the CLI on argv and returns its exit status instead of exiting."""
	try:
		cli.main(args=list(argv), prog_name=ProjInfo.PROJECT_NAME)
	except SystemExit as e:
		if e.code is None:
			return 0
		return e.code if isinstance(e.code, int) else 1
	return 0


if __name__ == "__main__":
	cli()
