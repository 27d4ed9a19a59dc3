"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes: usage errors 2, parse errors 3,
budget exhaustion 4, contract violations 5.
"""

from __future__ import annotations


class LdpcForgeError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(LdpcForgeError, ValueError):
    """Bad arguments to a constructor or operation (e.g. divisibility)."""


class RealizationError(LdpcForgeError):
    """A degree realization or socket matching could not be completed."""


class EdgeNotFoundError(LdpcForgeError, LookupError):
    """An edge named in a rewiring request is not present in the graph."""


class AlistParseError(LdpcForgeError, ValueError):
    """Malformed alist text. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EnumerationBudgetError(LdpcForgeError):
    """Stopping-set search ran out of its node-expansion budget.

    ``partial_sets`` holds every set found before the abort and
    ``complete_upto`` is the largest size that was fully exhausted
    (0 when not even size 1 finished).
    """

    def __init__(self, message: str, partial_sets, complete_upto: int, expansions: int):
        super().__init__(message)
        self.partial_sets = partial_sets
        self.complete_upto = complete_upto
        self.expansions = expansions


class ContractViolationError(LdpcForgeError):
    """An input violates a documented precondition (e.g. not a stopping set)."""
