"""Exception types shared across the package."""


class FaceCoverError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(FaceCoverError):
    """Length mismatch, index out of range, or dimension limit exceeded."""


class ConstantColumnError(FaceCoverError):
    """A zero or all-ones column prevents the requested normal form."""


class NotProperError(FaceCoverError):
    """Operation requires a proper zero matrix."""


class DecompositionError(FaceCoverError):
    """The stated decomposition hypothesis does not hold."""


class PreconditionError(FaceCoverError):
    """Parameters outside the operation's stated domain."""


class BudgetError(FaceCoverError):
    """A node/time/rejection budget was exhausted before completion."""


class MatrixFormatError(FaceCoverError):
    """Malformed zero-matrix text input."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DuplicateRowError(MatrixFormatError):
    """Duplicate rows in zero-matrix text input."""

    def __init__(self, message, lines=()):
        super().__init__(message)
        self.lines = tuple(lines)
