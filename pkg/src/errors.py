"""Error types shared by the field, matrix and code layers."""

from __future__ import annotations


class GLCodeError(Exception):
    """Base class for every error raised by the toolkit."""


class NotAPrimePower(GLCodeError, ValueError):
    pass


class ReduciblePolynomial(GLCodeError, ValueError):
    pass


class NegativeArgument(GLCodeError, ValueError):
    pass


class OutOfRange(GLCodeError, ValueError):
    pass


class ZeroNormal(GLCodeError, ValueError):
    pass


class DimensionMismatch(GLCodeError, ValueError):
    pass


class MixedFields(GLCodeError, ValueError):
    pass


class MatrixFormatError(GLCodeError, ValueError):
    pass


class DivisionByZero(GLCodeError, ZeroDivisionError):
    pass


class Singular(GLCodeError, ArithmeticError):
    pass


class Infeasible(GLCodeError, RuntimeError):
    pass


class VerificationError(GLCodeError, AssertionError):
    """An internal cross-check disagreed with the value it guards."""
