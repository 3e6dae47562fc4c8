"""Shared exception types."""

from __future__ import annotations


class BilliardError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BilliardError, ValueError):
    """Argument lies outside the mathematical domain of an operation."""


class NonConvergence(BilliardError, RuntimeError):
    """A numerical procedure exhausted its budget before reaching tolerance.

    Carries the best available result (when there is one) so callers can
    decide whether the partial answer is still usable.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result
