"""Exception hierarchy shared across the package."""


class CellMatrixError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CellMatrixError, ValueError):
    """An input violates a documented precondition (bad vector, bad matrix,
    ungroupable values, out-of-range index, ...)."""


class ConvergenceError(CellMatrixError, RuntimeError):
    """An iterative method exhausted its budget without converging."""
