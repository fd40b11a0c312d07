import os
import sys
from .testing_utility_functions import BASE_TEST_DIR, OUTPUT_DIR, setup_dirs_and_env_vars_and_create_config, clean_up_dirs_and_env_vars
sys.path.insert(0, "../theta_boundary")
from theta_boundary.utils import check_if_path_is_valid_file_target, expand_to_abs_path, safe_mkdir, write_text_file


class TestUtilMethods:
	"""
	Test the functionality of utils
	"""

	@staticmethod
	def setup_method():
		setup_dirs_and_env_vars_and_create_config()

	@staticmethod
	def teardown_method():
		clean_up_dirs_and_env_vars()

	def test_expand_to_abs_path(self):
		assert expand_to_abs_path("~/report.json") == os.path.join(os.path.expanduser("~"), "report.json")
		os.environ["THETA_BOUNDARY_TEST_REPORT_DIR"] = BASE_TEST_DIR
		try:
			assert expand_to_abs_path("$THETA_BOUNDARY_TEST_REPORT_DIR/r.txt") == os.path.join(os.path.abspath(BASE_TEST_DIR), "r.txt")
		finally:
			del os.environ["THETA_BOUNDARY_TEST_REPORT_DIR"]

	def test_file_target(self):
		safe_mkdir(OUTPUT_DIR)
		safe_mkdir(OUTPUT_DIR)
		assert check_if_path_is_valid_file_target(OUTPUT_DIR) is False
		assert check_if_path_is_valid_file_target(os.path.join(OUTPUT_DIR, "report.txt")) is True

	def test_write_text_file(self):
		target = os.path.join(OUTPUT_DIR, "a", "b", "report.txt")
		assert write_text_file(target, "summary: 0 checks") == os.path.abspath(target)
		with open(target) as f:
			assert f.read() == "summary: 0 checks\n"
