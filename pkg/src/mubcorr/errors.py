"""Exception hierarchy shared by all modules."""


class MubcorrError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(MubcorrError, ValueError):
    """Malformed or inconsistent input (wrong shapes, bad parameters)."""


class NotPSDError(InvalidInputError):
    """A matrix meant to be a state has a negative eigenvalue."""


class UnsupportedDimensionError(MubcorrError):
    """No construction or chart is available for the requested dimension
    or correlation level."""
