"""
Error types shared by the lab services.

Everything derives from ValueError so callers that only know about bad
input keep working.
"""

from typing import Optional


class LabError(ValueError):
    """Base class for all lab errors."""


class RingMismatchError(LabError):
    """Operands belong to different rings."""


class UnsupportedRingError(LabError):
    """The operation is not available for this ring family."""


class InputError(LabError):
    """Malformed input or a violated precondition (e.g. not unimodular)."""


class UndecidedError(LabError):
    """The predicate cannot be decided for this input."""


class BudgetExhaustedError(LabError):
    """A bounded search ran out of budget without a verdict."""

    def __init__(self, message: str, budget: Optional[int] = None, note: Optional[dict] = None):
        super().__init__(message)
        self.budget = budget
        self.note = note or {}
