"""Exception hierarchy shared by every pcii module."""

from __future__ import annotations


class PCError(Exception):
    """Base class for all domain errors raised by pcii."""


class ValidationError(PCError, ValueError):
    """Input violates a structural precondition.

    ``cell`` is the (row, column) position of the offending matrix entry
    when one can be named, otherwise ``None``.
    """

    def __init__(self, message: str, cell: tuple[int, int] | None = None):
        if cell is not None:
            message = f"{message} at cell ({cell[0]}, {cell[1]})"
        super().__init__(message)
        self.cell = cell


class NotSquare(ValidationError):
    pass


class NonPositiveEntry(ValidationError):
    pass


class ReciprocityViolation(ValidationError):
    pass


class DiagonalViolation(ValidationError):
    pass


class SkewSymmetryViolation(ValidationError):
    pass


class WrongCount(ValidationError):
    pass


class NonPositiveInput(ValidationError):
    pass


class NonFiniteInput(ValidationError):
    pass


class NegativeInput(ValidationError):
    pass


class NonPositiveGenerator(NonPositiveEntry):
    pass


class NonPositiveRatio(NonPositiveEntry):
    pass


class NotATree(ValidationError):
    pass


class TooSmall(ValidationError):
    """Matrix has fewer than three rows, so it contains no triad."""


class NoConvergence(PCError, ArithmeticError):
    pass


class Overflow(PCError, OverflowError):
    """A computed triad component is not representable as a finite float."""


class ParseError(PCError):
    """Malformed matrix file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column
