"""Exception types shared across the package.

The CLI maps these onto exit codes: ``InputError`` -> 2,
``InvalidStructure`` -> 1, ``InvariantViolation`` -> 3.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or unreadable input (bad JSON, unknown ids, wrong shapes)."""


class InvalidStructure(ValueError):
    """A well-formed input that fails a structural validation."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InvariantViolation(RuntimeError):
    """An internal consistency check failed, e.g. a boundary that does not square to zero."""
