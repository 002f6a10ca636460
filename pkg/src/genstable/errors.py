"""Exception types shared by the numerical modules."""


class GenStableError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GenStableError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(GenStableError, ValueError):
    """An argument lies outside the range where the stated accuracy is guaranteed."""


class PreconditionError(GenStableError, ValueError):
    """A structural precondition (family membership, convergence condition) fails."""


class AccuracyError(GenStableError, ArithmeticError):
    """A numerical scheme failed its self-consistency test.

    The competing estimates are kept on the exception so callers can decide
    whether the disagreement is tolerable.
    """

    def __init__(self, message, coarse=None, fine=None):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine
