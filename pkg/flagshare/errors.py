"""
Exception hierarchy for the flagshare toolkit.

Every error raised on purpose by the package derives from FlagshareError, so
callers (the CLI in particular) can catch one base class. Errors that signal
bad values also derive from ValueError and lookup failures from KeyError, which
keeps them usable with ordinary Python error handling.

Key Features:
    - One base class for the whole package
    - Dimension and definition errors for the algebra and code layers
    - Circuit construction and scheduling errors
    - Certification, search and estimation failures carrying diagnostics

Note:
    Exceptions carrying diagnostics keep them as attributes so the command
    layer can write them to report files instead of parsing messages.
"""

from typing import Any, List, Optional


class FlagshareError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(FlagshareError, ValueError):
    """Operands act on registers of different sizes or indices are out of range."""


class UnknownCodeError(FlagshareError, KeyError):
    """A code or scheme name is not in the catalog."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown code"


class CodeDefinitionError(FlagshareError, ValueError):
    """Generators, logical operators or the declared distance are inconsistent."""


class CircuitError(FlagshareError, ValueError):
    """A circuit cannot be built from the given operator or gate list."""


class ScheduleConflictError(CircuitError):
    """Two gates claim the same qubit in one timestep, or an order is not a permutation."""


class UniquenessViolation(FlagshareError):
    """
    Two flag-raised faults share a lookup key but need inequivalent corrections.

    Attributes:
        collisions (List[Any]): Offending (key, residual, residual) triples
    """

    def __init__(self, message: str, collisions: Optional[List[Any]] = None) -> None:
        super().__init__(message)
        self.collisions = collisions or []


class BudgetViolation(FlagshareError, ValueError):
    """A shared-flag group exceeds the syndrome budget of the opposite type."""

    def __init__(self, message: str, total: int = 0, budget: int = 0) -> None:
        super().__init__(message)
        self.total = total
        self.budget = budget


class SearchExhausted(FlagshareError):
    """
    A randomized circuit search ran out of iterations.

    Attributes:
        best (Any): Best circuit seen (fewest collisions)
        collisions (List[Any]): Collisions left in the best attempt
        iterations (int): Iterations spent
    """

    def __init__(self, message: str, best: Any = None,
                 collisions: Optional[List[Any]] = None, iterations: int = 0) -> None:
        super().__init__(message)
        self.best = best
        self.collisions = collisions or []
        self.iterations = iterations


class UndefinedRateError(FlagshareError, ArithmeticError):
    """No trial was accepted, so a post-selected rate has no value."""


class UncertifiedSchemeError(FlagshareError):
    """A scheme failed certification and may not be simulated."""


class ConfigError(FlagshareError, ValueError):
    """A configuration value or command-line flag is invalid."""
