"""
Exception hierarchy shared by every memolab module.

Rejected inputs raise ``InvalidInputError`` (a ``ValueError``), numerical
failures raise ``NumericalError`` subclasses that carry whatever iterate was
last trustworthy so callers can still report it.
"""

from typing import Any


class MemolabError(Exception):
    """Base class for all memolab errors."""

    pass


class InvalidInputError(MemolabError, ValueError):
    """Raised when an operation's preconditions are violated."""

    pass


class ConfigError(InvalidInputError):
    """Raised when a scenario configuration cannot be parsed or validated."""

    def __init__(self, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.details = details or []


class NumericalError(MemolabError):
    """Raised when a numerical procedure fails (non-finite values, breakdown)."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConvergenceError(NumericalError):
    """Raised when an iterative method exhausts its budget without converging."""

    def __init__(
        self,
        message: str,
        last_iterate: Any = None,
        diagnostics: dict[str, Any] | None = None,
    ):
        super().__init__(message, diagnostics)
        self.last_iterate = last_iterate


class DivergenceError(ConvergenceError):
    """Raised when an iteration is detected to blow up."""

    def __init__(
        self,
        message: str,
        last_stable: Any = None,
        diagnostics: dict[str, Any] | None = None,
    ):
        super().__init__(message, last_iterate=last_stable, diagnostics=diagnostics)
        self.last_stable = last_stable
