"""Exception hierarchy.

Every error raised by the library derives from :class:`CSRError`. The two
intermediate classes split failures into bad input (:class:`DataError`) and
numerically unsolvable problems (:class:`NumericalError`); the CLI maps them
to exit codes 3 and 4.
"""

from __future__ import annotations


class CSRError(Exception):
    """Base class for all library errors."""


class DataError(CSRError, ValueError):
    """Input data is malformed or violates a precondition."""


class NumericalError(CSRError, ArithmeticError):
    """The problem is well formed but cannot be solved reliably."""


class DomainError(DataError):
    """A time value lies outside [0, 1] or a function returned non-finite values."""


class IndexRangeError(DataError, IndexError):
    """A basis index is outside the valid range for the basis."""


class DegenerateGridError(DataError):
    """Timestamps contain duplicates, so no affine map to [0, 1] is invertible."""


class SizeError(DataError):
    """Too few samples to build a grid."""


class ShapeError(DataError):
    """Array dimensions are inconsistent."""


class InputValidationError(DataError):
    """Values are non-finite or out of the allowed range."""


class ParseError(DataError):
    """A CSV or parameter file could not be parsed.

    Parameters
    ----------
    message :
        Human readable description.
    line :
        1-based line number in the source file, if known.
    column :
        Column name or index, if known.
    """

    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ResolutionError(NumericalError):
    """A quadrature rule or sample grid is too coarse for the requested degree."""


class UnderdeterminedError(NumericalError):
    """Fewer samples than basis functions."""

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        super().__init__(
            f"{n} samples cannot determine {m} coefficients; need at least n >= {m}"
        )


class CollinearityError(NumericalError):
    """Design matrix columns are numerically dependent."""

    def __init__(self, column: int, message: str | None = None):
        self.column = column
        super().__init__(message or f"design column {column} is numerically dependent on earlier columns")
