"""Domain errors raised across the package.

Every error carries its class name so the CLI can report it verbatim.
"""

from __future__ import annotations


class QPMcKayError(Exception):
    """Base class for all domain errors."""


# cyclotomic
class DivisionByZero(QPMcKayError, ZeroDivisionError):
    pass


# grouprep
class UnsupportedParam(QPMcKayError):
    pass


class NonIntegerMultiplicity(QPMcKayError):
    pass


# mckay
class NotScalar(QPMcKayError):
    pass


# qp
class Infeasible(QPMcKayError):
    pass


class ReductionFailed(QPMcKayError):
    pass


class LoopAtVertex(QPMcKayError):
    pass


# mutclass
class BudgetExceeded(QPMcKayError):
    pass


class NotAutomorphism(QPMcKayError):
    pass


# stability
class AsymmetricQuiver(QPMcKayError):
    pass


class EmptyChamber(QPMcKayError):
    pass


class DimensionMismatch(QPMcKayError):
    pass


# geomreport
class UnexpectedLoopCount(QPMcKayError):
    pass


# cli
class VerificationFailed(QPMcKayError):
    pass
