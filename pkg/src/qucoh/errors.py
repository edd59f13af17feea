"""Exception types raised by qucoh."""


class QucohError(ValueError):
    """Base class for all input errors raised by this package."""


class InvalidInputError(QucohError):
    """Input array violates a structural invariant (shape, hermiticity, trace, ...).

    ``invariant`` names the violated property so callers (the CLI in
    particular) can report it.
    """

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class DomainError(QucohError):
    """A scalar argument lies outside the domain of the function."""


class UnsupportedDimensionError(QucohError):
    """Operation is only defined for some Hilbert-space dimensions."""
