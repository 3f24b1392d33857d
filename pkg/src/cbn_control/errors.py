"""Exception types raised across the package."""


class CBNError(Exception):
    """Base class for all package errors."""


class ParseError(CBNError, ValueError):
    """Malformed network or graph description."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConstantUpdateError(ParseError):
    """An update function is constant (empty or a literal 0/1).

    Constant updates are excluded from the model: such a variable has to be
    turned into a control input by the modeler.
    """


class NotControllableError(CBNError):
    """Raised by operations that require a controllable network."""

    def __init__(self, message, verdict=None):
        self.verdict = verdict
        super().__init__(message)


class TooLargeError(CBNError):
    """Instance exceeds a configured size guard."""


class SearchBudgetExceeded(CBNError):
    """Exact search ran out of its test budget.

    ``upper_bound`` holds the best feasible control set known at that point.
    """

    def __init__(self, message, upper_bound=None, tested_count=0):
        self.upper_bound = upper_bound
        self.tested_count = tested_count
        super().__init__(message)


class LayeringViolation(CBNError):
    """Network does not have the required three-layer structure."""


class NotDAGError(NotControllableError):
    """Dependency graph contains a cycle."""
