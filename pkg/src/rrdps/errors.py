"""Exception hierarchy shared by all rrdps modules."""


class RRDPSError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RRDPSError, ValueError):
    """An input failed a structural check (Hermiticity, trace, PSD, ...)."""


class DimensionError(ValidationError):
    """Matrix or vector dimensions are incompatible."""


class SizeError(RRDPSError, ValueError):
    """A requested object would exceed a configured size cap."""


class DomainError(RRDPSError, ValueError):
    """A scalar argument lies outside the domain of the function."""


class FeasibilityError(RRDPSError, ValueError):
    """Attack parameters give a state with a negative eigenvalue.

    ``constraint`` names the violated inequality (e.g. ``"lambda_1 >= 0"``).
    """

    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class RootError(RRDPSError, RuntimeError):
    """Root bracketing failed or found an unexpected number of sign changes."""
