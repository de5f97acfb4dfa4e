"""Exception types shared across the package."""


class GraphGroundError(Exception):
    """Base class for all package errors."""


class InvalidInputError(GraphGroundError, ValueError):
    """Input violates an operation's precondition (bad graph, subset, size...)."""


class SizeLimitError(GraphGroundError):
    """Requested computation exceeds a configured size limit."""


class ConvergenceError(GraphGroundError):
    """Iterative eigensolver failed to converge.

    ``residuals`` holds the last residual norms of the requested Ritz pairs.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class ConsistencyError(GraphGroundError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
