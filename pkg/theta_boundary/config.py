import sys
import json
import os
from os import path, environ
from colorama import Fore
from .printing import log_value, print_red_bold, print_value_red, print_section_header, print_yellow
from .utils import safe_mkdir
from .constants import ProjInfo


def get_xdg_config_path() -> str:
	"""Returns path to $XDG_CONFIG_HOME, or ~/.config, if it doesn't exist."""
	return environ.get('XDG_CONFIG_HOME') or path.join(path.expanduser('~'), '.config')


def get_config_path() -> str:
	"""
	Detects if in testing or prod env, and returns the right config path.
	:return: Path to config.
	"""
	test_config_path = environ.get('THETA_BOUNDARY_TEST_CONFIG_PATH', None)
	if test_config_path:
		return test_config_path
	else:
		return path.join(get_xdg_config_path(), "theta-boundary.conf")


def get_config() -> dict:
	"""
	:return Config.
	"""
	config_path = get_config_path()
	with open(config_path) as file:
		try:
			config = json.load(file)
		except json.decoder.JSONDecodeError:
			print_red_bold(f"ERROR: Invalid syntax in {config_path}")
			sys.exit(1)
	return config


def write_config(config) -> None:
	"""
	Write to config file
	"""
	with open(get_config_path(), 'w') as file:
		json.dump(config, file, indent=4)


def get_default_config() -> dict:
	"""Returns the default config: verify sweep ranges and sample sizes, plus output defaults."""
	return {
		"verify": {
			"gmax": 8,
			"nmax": 3,
			"mmax": 4,
			"samples": 50,
			"oracle_samples": 200,
			"normal_form_samples": 500,
			"seed": 20240601,
			"workers": 1,
			"perf_g": 64,
			"perf_seconds": 1.0,
		},
		"default_format": "text",
		"default_model": "poincare(g=4,n=1)",
		"lowest_supported_version": ProjInfo.VERSION
	}


def get_verify_settings(config: dict) -> dict:
	"""Verify settings from config, with defaults filled in for missing keys."""
	settings = dict(get_default_config()["verify"])
	for key, value in config.get("verify", {}).items():
		if key in settings:
			settings[key] = value
		else:
			print_yellow(f"Ignoring unknown verify setting in config: {key}")
	return settings


def safe_create_config() -> None:
	"""
	Creates config file if it doesn't exist already.
	"""
	config_path = get_config_path()
	# If it doesn't exist, create it.
	if not os.path.exists(config_path):
		log_value("Creating config file at:", config_path)
		safe_mkdir(os.path.split(config_path)[0])
		write_config(get_default_config())


def delete_config_file() -> None:
	"""Delete config file."""
	config_path = get_config_path()
	if os.path.isfile(config_path):
		print_red_bold("Deleting config file.")
		os.remove(config_path)
	else:
		print_red_bold("ERROR: No config file found.")


def show_config():
	"""
	Print the config. Colorize section titles and indent contents.
	"""
	print_section_header("THETA BOUNDARY CONFIG", Fore.RED)
	for section, contents in get_config().items():
		if isinstance(contents, dict):
			print_red_bold(f"\n{section.replace('_', ' ').capitalize()}:")
			for key, value in contents.items():
				print(f"	{key}: {value}")
		else:
			print_value_red(f"{section.replace('_', ' ').capitalize()}:", contents)
