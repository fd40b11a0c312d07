import json
import os
import sys
import pytest
from click.testing import CliRunner
from .testing_utility_functions import (OUTPUT_DIR, QUICK_VERIFY_SETTINGS, clean_up_dirs_and_env_vars,
										setup_dirs_and_env_vars_and_create_config, write_config_for_test)
sys.path.insert(0, "../theta_boundary")
import theta_boundary.__main__ as main_module
from theta_boundary.__main__ import cli, run_command
from theta_boundary.chow_models import evaluate_top, parse_model_descriptor
from theta_boundary.constants import ProjInfo
from theta_boundary.errors import ModelInconsistencyError
from theta_boundary.expr_parser import parse_expr
from theta_boundary.ring_core import render_rational


def invoke(*args):
	return CliRunner().invoke(cli, list(args))


class TestEvalCommandMethods:
	"""Test eval and nf."""

	@staticmethod
	def setup_method():
		setup_dirs_and_env_vars_and_create_config()

	@staticmethod
	def teardown_method():
		clean_up_dirs_and_env_vars()

	def test_eval_top(self):
		result = invoke("eval", "--model", "poincare(g=4,n=1)", "--top", "D^5")
		assert result.exit_code == 0
		assert result.output.strip() == "20"

	def test_eval_top_matches_library(self):
		src = "(xi + 2*mu - alpha)^4*eta + xi*alpha^2*mu^2"
		model = parse_model_descriptor("poincare(g=4,n=3)")
		result = invoke("eval", "--model", model.describe(), "--top", src)
		assert result.exit_code == 0
		assert result.output.strip() == render_rational(evaluate_top(model, parse_expr(src, model)))

	def test_eval_default_model_and_json(self):
		result = invoke("eval", "--top", "--format", "json", "xi*eta*mu^3")
		assert result.exit_code == 0
		assert json.loads(result.output) == {"model": "poincare(g=4,n=1)", "expr": "xi*eta*mu^3", "value": "6"}

	def test_eval_without_top_prints_normal_form(self):
		result = invoke("eval", "--model", "poincare(g=3,n=1)", "xi^2")
		assert result.exit_code == 0
		assert result.output.strip() == "-alpha*xi"

	def test_nf(self):
		result = invoke("nf", "--model", "level(g=3,n=1,m=2)", "xi_0^2 + xi_0*xi_1 + eta^2")
		assert result.exit_code == 0
		assert result.output.strip() == "-2*alpha*xi_0"

	def test_unknown_identifier_exits_2(self):
		result = invoke("nf", "--model", "level(g=3,n=1,m=2)", "xi_2^2")
		assert result.exit_code == 2
		assert "unknown identifier 'xi_2'" in result.output

	def test_syntax_error_exits_2(self):
		result = invoke("eval", "--model", "base(g=3,n=1)", "2mu")
		assert result.exit_code == 2
		assert "position 1" in result.output

	def test_bad_model_exits_2(self):
		result = invoke("eval", "--model", "poincare(g=1,n=1)", "mu")
		assert result.exit_code == 2

	def test_wrong_degree_exits_2(self):
		result = invoke("eval", "--model", "poincare(g=4,n=1)", "--top", "D^4")
		assert result.exit_code == 2

	@pytest.mark.parametrize("model,src", [("base(g=4,n=1)", "eta^2"), ("base(g=4,n=1)", "alpha*eta*mu"),
										   ("poincare(g=4,n=1)", "xi^2 + alpha*xi")])
	def test_degree_checked_before_reduction(self, model, src):
		result = invoke("eval", "--model", model, "--top", src)
		assert result.exit_code == 2
		assert "degree 2" in result.output or "degree 3" in result.output

	def test_cancelled_low_terms_are_fine(self):
		result = invoke("eval", "--model", "base(g=4,n=1)", "--top", "eta*mu^3 + eta^2 - eta^2")
		assert result.exit_code == 0
		assert result.output.strip() == "6"

	def test_nf_reduces_while_parsing(self):
		result = invoke("nf", "--model", "poincare(g=4,n=1)", "(mu + alpha + eta + xi)^200")
		assert result.exit_code == 0
		assert result.output.strip() == "0"


class TestDerivationCommandMethods:
	"""Test the derivation subcommands."""

	@staticmethod
	def setup_method():
		setup_dirs_and_env_vars_and_create_config()

	@staticmethod
	def teardown_method():
		clean_up_dirs_and_env_vars()

	def test_solve_theta_json(self):
		result = invoke("solve-theta", "--g", "5", "--n", "2", "--format", "json")
		assert result.exit_code == 0
		assert result.output.strip() == '{"c_xi":"1","c_mu":"1","c_alpha":"1/2","c_eta":"1/4"}'

	def test_solve_theta_text(self):
		result = invoke("solve-theta", "--g", "3")
		assert result.exit_code == 0
		assert result.output.split() == ["c_xi=1", "c_mu=1", "c_alpha=1/2", "c_eta=1/4"]

	def test_mumford(self):
		assert invoke("mumford", "--g", "3", "--n", "2").output.strip() == "8"
		result = invoke("mumford", "--g", "4", "--format", "json")
		assert json.loads(result.output)["boundary_number"] == "20"

	def test_level_branch(self):
		assert invoke("level-branch", "--g", "3", "--n", "1", "--m", "2").output.strip() == "64"
		assert invoke("level-branch", "--g", "2", "--n", "2", "--m", "3").output.strip() == "54"

	def test_pair(self):
		result = invoke("pair", "--model", "base(g=3,n=2)", "--curve", "delta_star", "mu + 2*alpha + 4*eta")
		assert result.exit_code == 0
		assert result.output.strip() == "18"

	def test_pair_requires_divisor(self):
		result = invoke("pair", "--model", "base(g=3,n=2)", "--curve", "mu_star", "mu^2")
		assert result.exit_code == 2

	def test_trick(self):
		result = invoke("trick", "--a", "2", "--b", "3", "--g", "4")
		assert result.exit_code == 0
		assert result.output.strip() == "-3040"
		assert invoke("trick", "--a", "1", "--b", "1/2", "--g", "4").output.strip() == "-10"
		assert invoke("trick", "--a", "1/0", "--b", "1", "--g", "4").exit_code == 2

	def test_chern(self):
		result = invoke("chern", "--g", "3")
		assert result.exit_code == 0
		lines = result.output.split("\n")
		assert "total=1 + alpha + 2*xi" in lines
		assert "c1=alpha + 2*xi" in lines
		assert "c2=0" in lines

	def test_missing_option_is_usage_error(self):
		assert invoke("solve-theta").exit_code == 2

	def test_failed_assertion_exits_1(self, monkeypatch):
		def broken(g, n):
			raise ModelInconsistencyError("boundary coefficient n(g+1)!/6", "expected 20, got 19")

		monkeypatch.setattr(main_module, "mumford_boundary_number", broken)
		result = invoke("mumford", "--g", "4")
		assert result.exit_code == 1
		assert "boundary coefficient n(g+1)!/6" in result.output


class TestVerifyCommandMethods:
	"""Test verify and the administrative commands."""

	@staticmethod
	def setup_method():
		setup_dirs_and_env_vars_and_create_config()
		write_config_for_test(**QUICK_VERIFY_SETTINGS)

	@staticmethod
	def teardown_method():
		clean_up_dirs_and_env_vars()

	def test_verify_text(self):
		result = invoke("verify")
		assert result.exit_code == 0
		assert "0 failures" in result.output
		assert "status=fail" not in result.output

	def test_verify_json_and_output_file(self):
		output = os.path.join(OUTPUT_DIR, "nested", "report.json")
		result = invoke("verify", "--gmax", "2", "--format", "json", "--output", output)
		assert result.exit_code == 0
		report = json.loads(result.output)
		assert report["summary"]["failed"] == 0
		assert report["summary"]["total"] == len(report["checks"])
		with open(output) as f:
			assert json.load(f) == report

	def test_verify_output_must_be_a_file(self):
		os.makedirs(OUTPUT_DIR, exist_ok=True)
		assert invoke("verify", "--output", OUTPUT_DIR).exit_code == 2

	def test_verify_failure_exits_1(self, monkeypatch):
		from theta_boundary.verification import CheckRecord

		monkeypatch.setattr(main_module, "run_verification",
							lambda **settings: [CheckRecord("mumford boundary", "g=2,n=1", "1", "2", False)])
		result = invoke("verify")
		assert result.exit_code == 1
		assert "1 failures" in result.output

	def test_version(self):
		result = invoke("-v")
		assert result.exit_code == 0
		assert ProjInfo.VERSION in result.output
		assert "theta-boundary developers" in result.output

	def test_show_config(self):
		result = invoke("show-config")
		assert result.exit_code == 0
		assert "THETA BOUNDARY CONFIG" in result.output
		assert "gmax: 3" in result.output

	def test_delete_config(self):
		config_path = os.environ["THETA_BOUNDARY_TEST_CONFIG_PATH"]
		result = invoke("delete-config")
		assert result.exit_code == 0
		assert "Deleting config file." in result.output
		assert not os.path.exists(config_path)

	def test_run_command(self, capsys):
		assert run_command(["solve-theta", "--g", "5", "--n", "2", "--format", "json"]) == 0
		assert capsys.readouterr().out.strip() == '{"c_xi":"1","c_mu":"1","c_alpha":"1/2","c_eta":"1/4"}'
		assert run_command(["nf", "--model", "base(g=3,n=1)", "mu +"]) == 2
