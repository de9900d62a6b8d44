"""Exceptions shared across the package."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed.

    Raised when a computation contradicts an identity that the chosen sign
    conventions guarantee (e.g. a conjugated point matrix that is not of
    point-matrix form).  Seeing this exception means a convention bug, not
    bad user input; bad input raises ValueError.
    """
