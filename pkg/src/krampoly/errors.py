"""Shared exception types.

Every domain error raised by this package derives from KrampolyError so
callers (and the HTTP layer) can catch one base class.
"""

from __future__ import annotations


class KrampolyError(Exception):
    """Base class for all krampoly domain errors."""


class ParseError(KrampolyError):
    """Malformed textual input (braid word, polynomial, rational number)."""


class IndexOutOfRange(KrampolyError):
    """A generator index, strand count or basis index is outside its range."""


class DimensionMismatch(KrampolyError):
    """Matrix or monodromy shapes are incompatible."""


class NotSquare(KrampolyError):
    """Operation requires a square matrix."""


class NotDivisible(KrampolyError):
    """Exact division requested but the divisor does not divide the dividend."""


class NegativePowerOfNonUnit(KrampolyError):
    """Negative powers exist only for units (monomials with coefficient ±1)."""


class PartTooSmall(KrampolyError):
    """A partial-twist strand range must contain at least two strands."""


class IrrationalCollisionUnresolved(KrampolyError):
    """A component-pair difference has non-rational roots; fibers cannot be
    enumerated exactly.  Carries the offending 1-based component pair."""

    def __init__(self, pair: tuple[int, int], message: str | None = None):
        self.pair = pair
        super().__init__(
            message
            or f"components {pair[0]} and {pair[1]} collide at non-rational x; "
            "cannot resolve singular fibers exactly"
        )
