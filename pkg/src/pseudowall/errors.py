"""Exception types shared across the package."""


class PseudowallError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class CapacityError(PseudowallError):
    """An enumeration would exceed its configured budget.

    The message always names the offending object (dimension tuple,
    Hom space, ambient dimension, ...).
    """

    exit_code = 3


class PreconditionError(PseudowallError):
    """Inputs violate the documented preconditions of an operation."""

    exit_code = 4


class UnsupportedRankError(PseudowallError):
    exit_code = 5


class InconsistencyError(PseudowallError):
    """An internal cross-check failed; indicates a bug, never user error."""

    exit_code = 6


class ProblemFileError(PseudowallError):
    exit_code = 2
