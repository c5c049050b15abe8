"""
Utility modules for flagshare commands: the logging singleton and the
command decorators.
"""

from .decorators import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    certified_scheme_required,
    logged_command
)
from .logger import Logger

__all__ = [
    'EXIT_FAILURE',
    'EXIT_OK',
    'EXIT_USAGE',
    'Logger',
    'certified_scheme_required',
    'logged_command'
]
