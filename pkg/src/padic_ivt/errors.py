"""Exception hierarchy.

Every error raised by the library derives from :class:`IVTError`, which is a
``ValueError`` so callers that only care about bad input can catch that.
"""


class IVTError(ValueError):
    """Base class for all library errors."""


class InvalidBaseError(IVTError):
    pass


class InvalidDigitError(IVTError):
    pass


class LengthError(IVTError):
    pass


class IndexOutOfRangeError(IVTError):
    pass


class InvalidTableError(IVTError):
    pass


class BaseMismatchError(IVTError):
    pass


class InvalidScalarError(IVTError):
    pass


class DomainError(IVTError):
    pass


class ArityError(IVTError):
    pass


class EnumerationTooLargeError(IVTError):
    """Raised when an exhaustive enumeration would exceed the configured budget."""


class UnstableMetricError(IVTError):
    """The bounded distance search did not stabilize when the bound was raised."""

    def __init__(self, low_bound: int, low_value: int, high_bound: int, high_value: int):
        self.low_bound = low_bound
        self.low_value = low_value
        self.high_bound = high_bound
        self.high_value = high_value
        super().__init__(
            f"distance not stable: {low_value} at digit bound {low_bound}, "
            f"{high_value} at digit bound {high_bound}"
        )
