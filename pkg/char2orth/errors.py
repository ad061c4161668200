"""
Exceptions for char2orth
Every error carries the CLI exit code it maps to
"""

from typing import Optional, Sequence


class Char2OrthError(Exception):
    """Base class for all library errors"""
    exit_code = 2


# Field arithmetic

class FieldError(Char2OrthError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError):
    pass


class NotASquare(FieldError):
    pass


class FieldOverflow(FieldError):
    """Raised when a rational function exceeds the polynomial degree cap"""
    pass


class InfiniteField(FieldError):
    pass


# Linear algebra

class LinearAlgebraError(Char2OrthError):
    pass


class SingularMatrix(LinearAlgebraError):
    pass


class DimensionMismatch(LinearAlgebraError):
    pass


# Forms and groups

class FormError(Char2OrthError):
    pass


class Undecidable(Char2OrthError):
    """The question has no decision procedure over this field"""
    pass


class IsometryError(Char2OrthError):
    pass


class NotAnIsometry(IsometryError):
    def __init__(self, message: str, witness: Optional[Sequence] = None):
        super().__init__(message)
        self.witness = witness


class NotAnInvolution(IsometryError):
    def __init__(self, message: str, witness: Optional[Sequence] = None):
        super().__init__(message)
        self.witness = witness


class NormalizationError(Char2OrthError):
    pass


class StructureError(Char2OrthError):
    pass


class ParseError(Char2OrthError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        self.line = text.count("\n", 0, position) + 1
        self.column = position - (text.rfind("\n", 0, position) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class BudgetExceeded(Char2OrthError):
    exit_code = 3


class VerificationFailed(Char2OrthError):
    exit_code = 1
