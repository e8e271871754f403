"""Exception types shared across the package."""


class CordicError(ValueError):
    """Base class for domain errors raised by this package."""


class RangeError(CordicError):
    """An argument lies outside the range an operation accepts."""


class FixedOverflowError(CordicError):
    """A real value cannot be represented in the Q2.30 word."""
