"""Exception types raised by the library."""


class UMEBError(Exception):
    """Base class for all errors raised by :mod:`umeb`."""


class InvalidInputError(UMEBError, ValueError):
    """An argument violates a documented precondition."""


class DimensionMismatchError(InvalidInputError):
    """Two objects live in different bipartite spaces."""


class NotOrthonormalError(InvalidInputError):
    """A family of vectors expected to be orthonormal is not.

    ``pair`` holds the offending index pair (diagonal entries report ``(k, k)``)
    and ``residual`` the entrywise deviation of the Gram matrix from the identity.
    """

    def __init__(self, message, pair, residual):
        super().__init__(message)
        self.pair = pair
        self.residual = residual


class DocumentError(UMEBError, ValueError):
    """A serialized state-set document could not be parsed or validated."""
