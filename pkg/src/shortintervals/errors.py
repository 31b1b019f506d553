"""Exception types shared across the package."""


class ShortIntervalsError(Exception):
    """Base class for all errors raised by this package."""


class OutOfDomain(ShortIntervalsError):
    """A sigma or theta argument lies outside the domain of the object."""


class DomainMismatch(ShortIntervalsError):
    """Two piecewise bounds do not cover the same sigma range."""


class DenominatorVanishes(ShortIntervalsError):
    """A rational function's denominator may vanish on the given interval."""


class NonConvergence(ShortIntervalsError):
    """Branch-and-bound exceeded its node budget before reaching tolerance."""


class InvalidFamilyIndex(ShortIntervalsError):
    """Family piece requested for an index below the family's first member."""


class OutOfRange(ShortIntervalsError):
    """A numeric argument exceeds the range covered by a sieve or dataset."""


class LimitTooLarge(ShortIntervalsError):
    """Requested sieve limit exceeds the configured memory guard."""


class TooManyZeros(ShortIntervalsError):
    """Too many ordinates below T for the quadratic-time energy count."""


class InsufficientZeros(ShortIntervalsError):
    """The zero dataset does not reach the requested height T."""


class ParseError(ShortIntervalsError):
    """Malformed numeric input or dataset line."""


class OrderError(ShortIntervalsError):
    """Zero ordinates in a dataset file are not strictly ascending."""
