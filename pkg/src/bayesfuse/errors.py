"""Exception types shared across the package."""


class BayesfuseError(Exception):
    """Base class for all errors raised by this package."""


class NonFiniteError(BayesfuseError):
    """An input mass, density, or parameter is NaN or infinite."""


class AllZeroMassError(BayesfuseError):
    """Every mass in the input is zero, so no distribution exists."""


class InsufficientCoverageError(BayesfuseError):
    """The requested grid misses too much of the family's probability mass."""


class BadResolutionError(BayesfuseError):
    """The output cell width does not evenly divide the smoothing window."""


class RepresentationMismatchError(BayesfuseError):
    """Operands mix discrete and gridded distributions, or use different grids."""


class IncompatibleError(BayesfuseError):
    """The prior and likelihood have zero (or infinite) overlap mass."""


class DegenerateProductError(BayesfuseError):
    """The weighted product of prior and likelihood has zero or infinite mass."""


class InvalidEventError(BayesfuseError):
    """An event is empty or refers to atoms/cells outside the distribution."""


class TooLargeError(BayesfuseError):
    """The requested enumeration exceeds the configured budget."""


class UnsupportedMassError(BayesfuseError):
    """A candidate posterior puts mass where the prior-likelihood product is zero."""


class FileFormatError(BayesfuseError):
    """A distribution file does not follow the documented format."""
