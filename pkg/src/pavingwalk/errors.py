"""Exception types shared across the package."""


class MatroidError(Exception):
    """Base class for all errors raised by this package."""


class GroundSetError(MatroidError):
    """An element index or mask falls outside the ground set."""


class InvalidBasisError(MatroidError):
    """A basis list violates the cardinality or non-emptiness requirements."""


class LoopError(MatroidError):
    """An operation was asked to contract (or condition on) a loop."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class ColoopError(MatroidError):
    """An operation was asked to delete a coloop."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class NotPavingError(MatroidError):
    """A circuit family does not define a paving matroid."""


class BudgetError(MatroidError):
    """An exhaustive computation would exceed its configured budget.

    Raised instead of silently producing a partial or approximate answer.
    """


class FormatError(MatroidError):
    """A text input file is malformed."""


class ConstructionError(MatroidError):
    """An internal construction failed its own self-check."""


class VerificationError(MatroidError):
    """A verified quantity did not match its expected value."""
