import os
from .printing import print_value_red, print_red_bold


def check_if_path_is_valid_file_target(abs_path) -> bool:
	"""Returns False if the path leads to a directory, True otherwise."""
	if os.path.isdir(abs_path):
		print_value_red('Output path is a directory:', abs_path)
		print_red_bold('Please enter a file path.\n')
		return False
	return True


def safe_mkdir(directory):
	"""Makes dir if it doesn't already exist, creating all intermediate directories."""
	if directory:
		os.makedirs(directory, exist_ok=True)


def expand_to_abs_path(path):
	"""
	Expands relative and user's home paths to the respective absolute path. Environment
	variables found on the input path will also be expanded.
	:param path: Path to be expanded.
	:return: (str) The absolute path.
	"""
	expanded_path = os.path.expanduser(path)
	expanded_path = os.path.expandvars(expanded_path)
	return os.path.abspath(expanded_path)


def write_text_file(path, text) -> str:
	"""
	Writes text to path, creating parent directories as needed.
	:return: (str) The absolute path written to.
	"""
	abs_path = expand_to_abs_path(path)
	safe_mkdir(os.path.dirname(abs_path))
	with open(abs_path, "w+") as f:
		f.write(text)
		if not text.endswith("\n"):
			f.write("\n")
	return abs_path
