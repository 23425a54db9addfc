"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operand shapes are incompatible."""


class ParseError(ValueError):
    """A text-format file is malformed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotConvergedError(RuntimeError):
    """An iteration hit its sweep cap before reaching tolerance.

    Carries the convergence report and, for the SVD driver, the factors
    assembled from the final iterate so callers can still inspect them.
    """

    def __init__(self, message: str, report=None, result=None):
        super().__init__(message)
        self.report = report
        self.result = result


class MultiplicityViolationError(RuntimeError):
    """Eigenvalues of a real counterpart Gram matrix failed to cluster in fours."""
