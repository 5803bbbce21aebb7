"""Exception types shared by the numeric core, the postulate engine and the circuit language."""

from __future__ import annotations


class QuantumError(Exception):
    """Base class for every error raised by :mod:`qstate`."""


class ShapeMismatch(QuantumError, ValueError):
    """Operand shapes are incompatible with the requested operation."""


class IndexOutOfRange(QuantumError, IndexError):
    """A 1-based component or basis index lies outside the valid range."""


class NotAColumn(QuantumError, ValueError):
    """A state was requested from a matrix with more than one column."""


class NotUnit(QuantumError, ValueError):
    """A matrix failed the unit check ``M^dagger M = I``.

    ``deviation`` is the largest per-component distance from the identity.
    """

    def __init__(self, message: str, deviation: float) -> None:
        super().__init__(message)
        self.deviation = deviation


class NonFinite(QuantumError, ValueError):
    """A complex number would carry a NaN or infinite component."""


class UnexpectedOutcome(QuantumError, RuntimeError):
    """A measurement produced an outcome that has probability zero in theory."""


class MatrixFormatError(QuantumError, ValueError):
    """Malformed matrix text. ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, col {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column
