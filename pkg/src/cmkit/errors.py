"""Exception hierarchy.

Every domain error carries a stable ``code`` (the class name) which the
command-line front end reports verbatim.
"""

from __future__ import annotations


class CMKitError(Exception):
    """Base class for all domain errors raised by cmkit."""

    @property
    def code(self) -> str:
        return type(self).__name__


# algebra
class NonDivisible(CMKitError, ArithmeticError):
    pass


class ZeroConstantTerm(CMKitError, ValueError):
    pass


# finite fields
class NotPrime(CMKitError, ValueError):
    pass


class TooLarge(CMKitError, ValueError):
    pass


class EvenCharacteristic(CMKitError, ValueError):
    pass


# curves
class Singular(CMKitError, ValueError):
    pass


class BadZetaNumerator(CMKitError, ValueError):
    pass


class Char2Or3Unsupported(CMKitError, ValueError):
    pass


class NegativeClosedPointCount(CMKitError, ArithmeticError):
    pass


class BadSpec(CMKitError, ValueError):
    """Malformed curve specification (unknown keys, wrong types)."""


# quadratic fields
class DivisionByZero(CMKitError, ZeroDivisionError):
    pass


class NotSplit(CMKitError, ValueError):
    pass


class ZeroElement(CMKitError, ValueError):
    pass


# motives and ranks
class NotOrdinary(CMKitError, ValueError):
    pass


class DegreeOutOfRange(CMKitError, ValueError):
    pass


class MissingBase(CMKitError, ValueError):
    pass


class NoMatch(CMKitError):
    """Two decompositions have different Frobenius polynomial multisets.

    ``polynomial`` holds the first left-hand factor that found no partner
    (rational coefficients, constant term first), or ``None`` when the
    lists differ in length.
    """

    def __init__(self, message: str, polynomial=None, index: int | None = None):
        super().__init__(message)
        self.polynomial = polynomial
        self.index = index
