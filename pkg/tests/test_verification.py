import json
import sys
from .testing_utility_functions import QUICK_VERIFY_SETTINGS
sys.path.insert(0, "../theta_boundary")
from theta_boundary.verification import (CHECK_GROUPS, CheckRecord, check_intersection_table, check_oracle,
										 check_performance, check_rewrite, render_report, run_verification,
										 summarize)


class TestVerificationMethods:
	"""Test the invariant sweep."""

	def test_every_group_passes_on_a_small_sweep(self):
		records = run_verification(**QUICK_VERIFY_SETTINGS)
		assert records
		assert [record for record in records if not record.passed] == []
		assert {record.name for record in records} >= {"theta solver", "trick T", "level branch", "oracle equivalence",
														"local confluence", "performance", "chern cancellation",
														"section product", "shift adjointness", "shift invariance",
														"level poincare theta", "level poincare evaluation",
														"rewrite termination bound"}

	def test_intersection_table(self):
		records = check_intersection_table(nmax=4)
		assert len(records) == 4 * (9 + 1)
		assert all(record.passed for record in records)

	def test_rewrite_and_oracle(self):
		records = check_rewrite(gmax=4, mmax=3, normal_form_samples=30, seed=1)
		records += check_oracle(gmax=4, mmax=3, oracle_samples=20, seed=1)
		assert all(record.passed for record in records)

	def test_performance_budget(self):
		[record] = check_performance(perf_g=64, perf_seconds=30.0)
		assert record.passed
		[record] = check_performance(perf_g=6, perf_seconds=0.0)
		assert not record.passed

	def test_selected_groups_in_a_pool(self):
		settings = dict(QUICK_VERIFY_SETTINGS, workers=2)
		records = run_verification(groups=["intersection table", "mumford boundary"], **settings)
		assert {record.name for record in records} == {"intersection table", "ns generation", "mumford boundary",
													   "mumford decomposition"}
		assert all(record.passed for record in records)
		assert set(CHECK_GROUPS) >= {"intersection table", "mumford boundary"}

	def test_render_report(self):
		records = [CheckRecord("trick T", "g=2,n=1", "1", "1", True), CheckRecord("level branch", "g=2,n=1,m=2", "8", "7", False, "off by one")]
		assert summarize(records) == {"total": 2, "passed": 1, "failed": 1}
		report = json.loads(render_report(records, "json"))
		assert report["summary"]["failed"] == 1
		assert report["checks"][1]["status"] == "fail"
		assert report["checks"][1]["detail"] == "off by one"
		text = render_report(records, "text").split("\n")
		assert text[0] == "check='trick T' params=g=2,n=1 expected=1 got=1 status=pass"
		assert text[-1] == "summary: 2 checks, 1 passed, 1 failures"

	def test_model_agreement_groups(self):
		records = run_verification(groups=["section product", "shift adjointness", "shift invariance",
										   "level poincare agreement"], **QUICK_VERIFY_SETTINGS)
		assert records
		assert all(record.passed for record in records)
		section_records = [record for record in records if record.name == "section product"]
		# g in 2..3, n = 1: poincare plus level m = 1 and m = 2 (two components)
		assert len(section_records) == 2 * (1 + 1 + 2)
