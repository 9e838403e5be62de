"""Exception taxonomy shared by the library and the CLI exit codes."""

from __future__ import annotations


class RinormError(Exception):
    """Base class. `condition` is a short machine-readable tag that the CLI
    copies into its reports."""

    def __init__(self, message: str, condition: str = ""):
        super().__init__(message)
        self.condition = condition or message


class DomainError(RinormError, ValueError):
    """Invalid mathematical input: bad parameters, violated preconditions,
    divergent integrals where finiteness is required."""


class DescriptorError(DomainError):
    """A space or Young-function descriptor fails its validity conditions."""


class BracketError(DomainError):
    """Monotone inversion called with a bracket that does not contain the target."""


class CoverageError(RinormError, LookupError):
    """Parameters fall outside every row of a case table."""


class ConvergenceError(RinormError, RuntimeError):
    """An iterative procedure failed to converge within its budget."""


class UnresolvedTailWarning(UserWarning):
    """Truncated integral whose tail behavior was not declared; the returned
    value omits an unbounded-error tail."""
