"""Exception hierarchy shared by all ubsolve modules."""


class UbsolveError(Exception):
    """Base class for every error raised by ubsolve."""


class ParseError(UbsolveError):
    def __init__(self, message, span=None):
        self.span = span
        if span is not None:
            message = f"{message} (line {span.line}, column {span.column})"
        super().__init__(message)


class ArityError(UbsolveError):
    def __init__(self, name, expected, got):
        self.name = name
        self.expected = expected
        self.got = got
        super().__init__(f"symbol {name!r} used with arity {got}, previously {expected}")


class EvaluationError(UbsolveError):
    """A symbol or variable needed for evaluation is missing."""


class CoverageError(UbsolveError):
    """An interpretation does not cover the symbols it must cover."""

    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__("uninterpreted symbols: " + ", ".join(self.missing))


class BackendError(UbsolveError):
    """The external SMT solver could not be run or violated the protocol."""


class ResourceError(UbsolveError):
    """The internal enumerator exceeded its work limit."""


class SolverTimeout(UbsolveError):
    """The global time budget was exhausted."""
