"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` which the CLI uses as its exit status.
"""
from __future__ import annotations


class WittZetaError(Exception):
    code = 70


class ParseError(WittZetaError):
    code = 2

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ZeroConstantTerm(WittZetaError):
    code = 3


class NonzeroConstantTerm(WittZetaError):
    code = 4


class WeightOverflow(WittZetaError):
    code = 5


class IntegralityViolation(WittZetaError):
    code = 6


class BadLPolynomial(WittZetaError):
    code = 7


class NonIntegralClosedPoints(WittZetaError):
    code = 8


class NoSolution(WittZetaError):
    code = 9


class InsufficientOrder(WittZetaError):
    code = 10


class InconsistentRelation(WittZetaError):
    code = 11


class InvalidArgument(WittZetaError, ValueError):
    code = 12


class InsufficientData(WittZetaError):
    code = 13


# exit status used when a command ran fine but the property it checks failed
CHECK_FAILED = 1

EXIT_CODES = {
    cls.__name__: cls.code
    for cls in (
        ParseError,
        ZeroConstantTerm,
        NonzeroConstantTerm,
        WeightOverflow,
        IntegralityViolation,
        BadLPolynomial,
        NonIntegralClosedPoints,
        NoSolution,
        InsufficientOrder,
        InconsistentRelation,
        InvalidArgument,
        InsufficientData,
    )
}
