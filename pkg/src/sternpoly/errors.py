"""Exception types shared across the package.

Each class carries the process exit code the command line tool maps it to,
so the mapping lives in exactly one place.
"""

from __future__ import annotations


class SternError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InvalidParameter(SternError):
    """A caller-supplied argument is outside the documented domain."""

    exit_code = 2


class AlphaOutOfRange(SternError):
    """An evaluation point is outside the open unit interval in absolute value."""

    exit_code = 2


class CapExceeded(SternError):
    """A result would exceed the configured size cap; computation was aborted."""

    exit_code = 3


class NonConvergence(SternError):
    """An iteration failed to stabilize within its budget."""

    exit_code = 4


class DivisionByZero(SternError):
    """A convergent denominator vanished at the requested evaluation point."""

    exit_code = 5


class InternalInvariant(SternError):
    """A quantity the library guarantees was contradicted; indicates a bug."""

    exit_code = 1


class PrecisionTooLow(SternError):
    """The working precision is insufficient for the requested tolerance."""

    exit_code = 1
