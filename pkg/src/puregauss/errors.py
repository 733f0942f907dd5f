"""Exception hierarchy shared by the whole package."""


class PureGaussError(ValueError):
    """Base class for all domain errors raised by puregauss."""


class InvalidDimensionError(PureGaussError):
    pass


class InvalidIndexError(PureGaussError):
    pass


class InvalidParameterError(PureGaussError):
    pass


class ConstraintViolationError(InvalidParameterError):
    """Raised when beta < sqrt(alpha**2 + 1) for a traceless single-mode op."""


class PurityError(PureGaussError):
    pass


class DomainError(PureGaussError):
    """Input is not a bona fide covariance matrix."""


class DecompositionError(PureGaussError):
    pass


class StateFileError(PureGaussError):
    """Malformed state file. ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
