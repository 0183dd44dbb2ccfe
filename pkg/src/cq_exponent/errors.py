"""Exception hierarchy shared by all modules."""


class CQError(ValueError):
    """Base class for invalid inputs to the exponent library."""


class DomainError(CQError):
    pass


class DimensionMismatch(CQError):
    pass


class NonHermitian(CQError):
    pass


class NonUnitDiagonal(CQError):
    pass


class NotPositiveSemidefinite(CQError):
    pass


class DegenerateChannel(CQError):
    pass


class UnsupportedKind(CQError):
    pass


class NoConvergence(RuntimeError):
    """Raised when the Jacobi sweep budget is exhausted."""
