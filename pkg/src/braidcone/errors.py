"""Exception hierarchy.

Input problems derive from :class:`PosetError` (CLI exit code 1); broken
internal invariants derive from :class:`InvariantError` (exit code 2).
"""

from __future__ import annotations


class PosetError(ValueError):
    """Invalid input. ``line``/``column`` are set when parsing from text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"

    def at(self, line: int | None, column: int | None = None) -> "PosetError":
        """Return a copy of this error carrying a source location."""
        err = type(self)(self.message, line, column)
        return err


class ParseError(PosetError):
    pass


class CycleError(PosetError):
    pass


class DisconnectedError(PosetError):
    pass


class TooSmallError(PosetError):
    pass


class NotUpsetError(PosetError):
    pass


class UnderdeterminedError(PosetError):
    pass


class IndexMismatchError(PosetError):
    pass


class NotAcyclicError(PosetError):
    pass


class NoMaxError(PosetError):
    pass


class NotApplicableError(PosetError):
    pass


class CapExceededError(PosetError):
    pass


class InvariantError(RuntimeError):
    """An internal consistency check failed. Always a bug."""


class QuotientNotPosetError(InvariantError):
    pass
