from colorama import Fore, Style
from .constants import ProjInfo

_verbose = False


def set_verbose(enabled: bool):
	global _verbose
	_verbose = enabled


def print_blue(text):
	print(Fore.BLUE + text + Style.RESET_ALL)


def print_red(text):
	print(Fore.RED + text + Style.RESET_ALL)


def print_yellow(text):
	print(Fore.YELLOW + text + Style.RESET_ALL)


def print_red_bold(text):
	print(Fore.RED + Style.BRIGHT + text + Style.RESET_ALL)


def print_green_bold(text):
	print(Fore.GREEN + Style.BRIGHT + text + Style.RESET_ALL)


def print_value_blue(label, value):
	print(Fore.BLUE + Style.BRIGHT + label, Style.NORMAL + str(value) + Style.RESET_ALL)


def print_value_red(label, value):
	print(Fore.RED + Style.BRIGHT + label, Style.NORMAL + str(value) + Style.RESET_ALL)


def log(text):
	"""Progress message, shown only with --verbose."""
	if _verbose:
		print_blue(text)


def log_value(label, value):
	if _verbose:
		print_value_blue(label, value)


def print_version_info(cli=True):
	"""
	Formats version differently for CLI and the verify banner.
	"""
	version = "v{} by {}".format(ProjInfo.VERSION, ProjInfo.AUTHOR_FULL_NAME)
	if not cli:
		print(Fore.RED + Style.BRIGHT + "\t{}\n".format(version) + Style.RESET_ALL)
	else:
		print(version)


def print_banner():
	"""Banner graphic, then stylized version and author info."""
	print(Fore.YELLOW + Style.BRIGHT + "\n" + ProjInfo.BANNER + Style.RESET_ALL)
	print_version_info(False)


def print_section_header(title, color):
	"""Prints variable sized section header."""
	block = "#" * (len(title) + 2)
	print("\n" + color + Style.BRIGHT + block)
	print("#", title)
	print(block + "\n" + Style.RESET_ALL)


def print_check_result(name, params, passed, detail=""):
	"""One verify check as it finishes: green PASS or red FAIL, then the parameters."""
	if passed:
		print(Fore.GREEN + Style.BRIGHT + "PASS " + Style.NORMAL + f"{name} {params}" + Style.RESET_ALL)
	else:
		suffix = f": {detail}" if detail else ""
		print(Fore.RED + Style.BRIGHT + "FAIL " + Style.NORMAL + f"{name} {params}{suffix}" + Style.RESET_ALL)
