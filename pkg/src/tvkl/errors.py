"""Exception hierarchy.

Everything raised on bad input derives from ValidationError, which is also a
ValueError so that callers using plain ``except ValueError`` keep working.
"""

from __future__ import annotations


class TvklError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TvklError, ValueError):
    """An input violates an operation's contract."""


class NegativeWeightError(ValidationError):
    """A probability weight is negative (or not a finite number)."""


class SumToleranceError(ValidationError):
    """Weights do not sum to 1 within the construction tolerance."""

    def __init__(self, total: float, tolerance: float):
        self.total = total
        self.tolerance = tolerance
        super().__init__(
            f"probs: weights sum to {total!r}, more than {tolerance!r} away from 1"
        )


class DuplicateLabelError(ValidationError):
    """Two support atoms share the same label."""


class EmptySupportError(ValidationError):
    """A distribution needs at least one atom."""


class InvalidLabelError(ValidationError):
    """A label is not usable (wrong type, or contains the reserved separator)."""


class OutOfRangeError(ValidationError):
    """A numeric argument lies outside its documented domain."""


class TooLargeError(ValidationError):
    """The request exceeds an explicit size cap for exhaustive computation."""


class MismatchedSupportsError(ValidationError):
    """A per-atom structure does not line up with the support it refers to."""


class EmptyPSupportError(ValidationError):
    """The first distribution puts mass nowhere (never true for valid inputs)."""


class MisalignedWitnessError(ValidationError):
    """A witness function's length does not match the aligned support."""


class SupportMismatchError(TvklError):
    """The two distributions do not share a common support where required,
    so the requested quantity is infinite or unbounded."""


class UnsupportedInequalityError(ValidationError):
    """The requested inequality cannot be checked by this engine."""
