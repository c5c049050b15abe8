"""
Main entry point for flagshare.

Runs the command-line front end; see ``python main.py --help``.
"""

import sys

from flagshare.cli import main


if __name__ == '__main__':
    sys.exit(main())
