"""Exception hierarchy shared by all orthosum modules."""


class OrthosumError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(OrthosumError):
    """A family parameter or option is outside its admissible range."""


class DomainError(OrthosumError):
    """An evaluation point lies outside the domain of validity."""


class DegreeCapExceeded(OrthosumError):
    """A polynomial degree exceeds the configured safety cap."""


class IllConditioned(OrthosumError):
    """The requested point is too close to a singular configuration."""


class QuadratureDiverged(OrthosumError):
    """A contour quadrature failed its internal quality diagnostic."""
