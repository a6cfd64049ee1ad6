"""Exception hierarchy shared by all jsrkit modules."""


class JsrError(Exception):
    """Base class for every error raised by jsrkit."""


class ShapeError(JsrError):
    """A matrix (or matrix entry in a set file) has the wrong shape.

    ``index`` identifies the offending matrix when the error comes from a
    set loader, else it is None.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"matrix {index}: {message}")
        self.index = index


class ParseError(JsrError):
    """Malformed input file; carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class DimensionMismatch(JsrError):
    """Operands live in different matrix dimensions."""


class DimensionOverflow(JsrError):
    """A Kronecker/lift construction would exceed the dimension cap."""


class DimensionCap(JsrError):
    """Generated subalgebra closure exceeded the requested dimension cap."""


class IndexOutOfRange(JsrError):
    """A word letter does not index a generator of the set."""


class BudgetExceeded(JsrError):
    """Requested enumeration does not fit in the word budget."""


class CapExceeded(JsrError):
    """Input or option exceeds a safety cap (caps lower, never raise)."""


class NonConvergence(JsrError):
    """The eigenvalue backend failed to converge (pathological input)."""


class InvalidBasis(JsrError):
    """Proposed algebra basis is not linearly independent at tolerance."""


class NotClosed(JsrError):
    """Proposed basis is not multiplicatively closed at tolerance."""


class NotInAlgebra(JsrError):
    """Element does not lie in the span of the algebra basis."""


class NotAnIdeal(JsrError):
    """Subspace is not a two-sided ideal of its parent algebra."""


class NotAChain(JsrError):
    """Ideal list is not a strictly increasing chain in one algebra."""


class IllConditioned(JsrError):
    """Numerical rank decision has no safe spectral gap."""


class PreconditionNotCertified(JsrError):
    """A check refused to run because its certified precondition failed."""


class SelfCheckFailed(JsrError):
    """An internal consistency assertion (constructor self-check) failed."""
