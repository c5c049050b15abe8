"""Entry point for ``python -m flagshare``."""

import sys

from .cli import main

sys.exit(main())
