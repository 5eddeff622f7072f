"""Exceptions raised by the positroid braids toolkit."""

from __future__ import annotations

from typing import Any, List, Optional


class PositroidBraidsError(Exception):
    """Base class for all toolkit errors."""


class BraidParseError(PositroidBraidsError, ValueError):
    """Raised when a braid word, permutation, polynomial or datum cannot be parsed."""


class InvalidDatumError(PositroidBraidsError, ValueError):
    """Raised when a KLS datum or braid word violates its invariants."""

    def __init__(self, violations: List[str]) -> None:
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid datum")


class EvaluationError(PositroidBraidsError, ValueError):
    """Raised when a polynomial cannot be evaluated or substituted."""


class InapplicableMoveError(PositroidBraidsError):
    """Raised when a braid move does not apply at the requested position."""

    def __init__(self, message: str, move: Any = None, word: Any = None) -> None:
        self.move = move
        self.word = word
        super().__init__(message)


class ReplayError(PositroidBraidsError):
    """Raised when a move trace does not replay to its recorded end word."""

    def __init__(self, message: str, step: Optional[int] = None) -> None:
        self.step = step
        super().__init__(message)


class BoundExceededError(PositroidBraidsError):
    """Raised when an enumeration or search would exceed its configured bound."""


class SliceNotFoundError(PositroidBraidsError):
    """Raised when a derivation has no slice with unit coefficient."""
