"""Exception types raised across the toolkit."""


class MbanError(Exception):
    """Base class for toolkit errors."""


class DimensionError(MbanError, ValueError):
    """A configuration and a network disagree on the number of automata."""


class ParameterError(MbanError, ValueError):
    """A construction or command parameter violates its precondition."""


class DomainError(MbanError, ValueError):
    """The request is outside the problem's domain (e.g. even n for DCT)."""


class BudgetExceeded(MbanError):
    """A search or orbit did not finish within the allowed budget.

    ``required`` carries the budget that would have been needed, when known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class FormatError(MbanError, ValueError):
    """A graph or configuration file could not be parsed."""
