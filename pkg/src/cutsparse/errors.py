"""Exception types shared across the package."""


class CutSparseError(Exception):
    """Base class for all package errors."""


class InvalidCutError(CutSparseError, ValueError):
    """A cut side was empty or contained every vertex."""


class GraphError(CutSparseError, ValueError):
    """Malformed graph data (bad vertex id, nonpositive weight, size mismatch)."""


class SizeCapError(CutSparseError):
    """An exhaustive oracle was asked to run above its configured size cap."""


class EstimationError(CutSparseError, RuntimeError):
    """Strength estimation stopped making progress."""


class ParseError(CutSparseError):
    """A graph or labels file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
