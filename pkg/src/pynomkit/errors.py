"""Exception types raised by pynomkit."""

from __future__ import annotations

from dataclasses import dataclass


class NominalError(Exception):
    """Base class for all pynomkit errors."""


class AutomatonFormatError(NominalError, ValueError):
    """Syntax error in an automaton file or a word literal.

    Attributes:
        line: 1-based line of the offending token.
        column: 1-based column of the offending token.
        expected: Human-readable description of what was expected.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: str = "") -> None:
        self.line = line
        self.column = column
        self.expected = expected
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")


@dataclass(frozen=True)
class Violation:
    """One broken structural constraint of an automaton description."""

    invariant: str
    """Short invariant name, e.g. ``determinism`` or ``history-injective``."""

    location: str
    """Offending state or transition, rendered as text."""

    message: str

    def __str__(self) -> str:
        return f"[{self.invariant}] {self.location}: {self.message}"


class ValidationError(NominalError, ValueError):
    """A description does not denote a valid automaton."""

    def __init__(self, violations: list[Violation]) -> None:
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s):\n{lines}")


class InvariantViolation(NominalError, AssertionError):
    """An internal invariant of a construction did not hold."""


class DecisionError(NominalError, RuntimeError):
    """A decision procedure ran out of its configured budget."""


__all__ = [
    "AutomatonFormatError",
    "DecisionError",
    "InvariantViolation",
    "NominalError",
    "ValidationError",
    "Violation",
]
