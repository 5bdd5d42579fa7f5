"""Exception types shared across the package."""

from __future__ import annotations


class MixedFieldError(TypeError):
    """Raised when an operation combines elements of different parents."""


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


class InexactDivisionError(ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


class ConsistencyError(RuntimeError):
    """An internal postcondition failed; indicates a bug or inconsistent input data."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.col}")


class NotUnitalError(ValueError):
    """An ideal has no identity element (the ambient algebra is not semisimple)."""


class ValidationError(ValueError):
    """Input data (a group table, an algebra, relation data) fails a structural check."""


class SamplingError(RuntimeError):
    """Every sampled specialisation point was a pole; retry with a larger extension degree."""
