"""Exception types raised across the package."""


class RdfLabError(Exception):
    """Base class for all package errors."""


class InvalidArgument(RdfLabError, ValueError):
    pass


class GridMismatch(RdfLabError, ValueError):
    pass


class OutOfBandError(RdfLabError, ValueError):
    """An interval or frequency lies outside the band representable on a grid."""


class UnsupportedDegree(RdfLabError, ValueError):
    pass


class NumericalInconsistency(RdfLabError, ArithmeticError):
    """Two independent numerical routes disagree beyond tolerance."""


class DegenerateWindow(RdfLabError, ValueError):
    """The base window fails the non-degeneracy hypothesis."""


class ConfigError(RdfLabError, ValueError):
    pass
