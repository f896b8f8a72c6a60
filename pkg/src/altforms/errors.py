"""Exception hierarchy.

Everything deriving from :class:`AltFormsError` is a *domain* error: the input
was well formed but the requested object does not exist (or could not be found
within the configured budget).  The CLI maps these to exit code 1 and
:class:`ParseError` to exit code 2.
"""


class AltFormsError(Exception):
    """Base class for typed domain errors."""


class NonExactDivision(AltFormsError, ArithmeticError):
    pass


class SingularMatrix(AltFormsError, ArithmeticError):
    pass


class BudgetExceeded(AltFormsError):
    pass


class NoSingularLineFound(AltFormsError):
    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class DimensionTooSmall(AltFormsError):
    pass


class SymbolicBoundExceeded(AltFormsError):
    pass


class NotBinomialDimension(AltFormsError):
    pass


class Degenerate(AltFormsError):
    pass


class No2SingularSubspace(AltFormsError):
    pass


class InternalProportionalityViolation(AssertionError):
    """Raised when the divided power of a contraction is not proportional to
    the volume contraction.  This cannot happen for a correct implementation."""


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
