"""
Subcommands of the flagshare CLI.

Each module exposes ``run(args) -> int``; COMMANDS maps subcommand names to
them.
"""

from . import codes, search, tables, threshold, verify

COMMANDS = {
    'verify': verify.run,
    'search': search.run,
    'threshold': threshold.run,
    'tables': tables.run,
    'codes': codes.run,
}

__all__ = ['COMMANDS']
