import sys
from .config import get_config
from .printing import print_red_bold, print_red
from .constants import ProjInfo


def check_if_config_upgrade_needed():
	"""Checks if a config is supported by the current version of theta-boundary"""
	config = get_config()
	missing = [key for key in ("lowest_supported_version", "verify") if key not in config]
	if missing:
		print_red_bold(f"ERROR: Config version detected as incompatible with current theta-boundary version ({ProjInfo.VERSION}).")
		print_red(f"Missing keys: {', '.join(missing)}. There are two possible fixes.")
		print_red("1. Backup your config file to another location and remove the original config.")
		print_red("\ttheta-boundary will recreate a compatible config on the next run.")
		print_red("2. Manually add the missing keys (see `theta-boundary show-config` on a fresh config).")
		sys.exit(1)
