"""Exception types shared across the package.

DomainError subclasses are expected, user-facing failure modes (no trees of
the requested size, degenerate variance, ...).  The CLI maps them to exit
code 2 and prints ``error: <CODE>: <message>`` on stderr, where CODE is the
class name.  Precondition violations (bad argument types/values) raise plain
ValueError and are treated as usage errors.  Internal invariant failures
(e.g. an exact division that does not come out exact) raise ArithmeticError:
those indicate a bug, never bad input.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for expected domain failures."""

    @property
    def code(self) -> str:
        return type(self).__name__


class NoTrees(DomainError):
    """No tree of the requested size exists for the child set."""


class DegenerateVariance(DomainError):
    """A statistic is constant, so scaled moments are undefined."""


class EnumerationTooLarge(DomainError):
    """Exhaustive enumeration was requested above the configured cap."""


class NonUnitConstantTerm(DomainError):
    """The coefficient recurrence for powers requires constant term 1."""


class InvalidQuery(DomainError):
    """A numerator query mixes indices in an unsupported way."""


class InvalidCorrelation(DomainError):
    """A squared correlation outside [0, 1] was supplied."""


class InsufficientData(DomainError):
    """Too few sequence terms for the requested recurrence bounds."""


class LeadingCoefficientZero(DomainError):
    """A recurrence's leading coefficient vanishes at a needed index."""
