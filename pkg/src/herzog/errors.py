"""Exception hierarchy shared by all modules."""


class HerzogError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(HerzogError):
    """Mismatched variable counts, or a variety of the wrong dimension."""


class FieldMismatchError(HerzogError):
    """Arithmetic attempted between objects over different fields."""


class EmptyPolynomialError(HerzogError):
    """An operation needing a nonzero polynomial received zero."""


class ParseError(HerzogError):
    def __init__(self, message, source="<string>", line=1, column=1):
        self.source = source
        self.line = line
        self.column = column
        super().__init__(f"{source}:{line}:{column}: {message}")


class UnsupportedEliminationError(HerzogError):
    """Elimination requested for a variable set that is not a prefix."""


class OrderViolationError(HerzogError):
    """A substitution would not preserve the monomial order."""


class InternalConsistencyError(HerzogError):
    """A self-check failed. This signals a bug, not bad input."""


class PreconditionError(HerzogError):
    """The caller did not establish a documented precondition."""


class HypothesisNotMetError(PreconditionError):
    """The instance lies outside the case an algorithm handles (e.g. vertex 0 not free)."""


class SizeError(HerzogError):
    """Input exceeds a configured size bound."""


class DegreeCeilingExceeded(HerzogError):
    """A Groebner basis computation passed its total-degree ceiling."""
