"""Exception hierarchy.

Every error carries the process exit code the command-line front end maps
it to, so the mapping lives next to the error rather than in the CLI.
"""


class TripleWellError(Exception):
    exit_code = 1


class InvalidParameterError(TripleWellError, ValueError):
    exit_code = 2


class AnalysisError(TripleWellError):
    """No critical point of the requested kind was found."""

    exit_code = 3


class BracketError(TripleWellError):
    """The boundary value does not change sign across a bracket."""

    exit_code = 3


class IncompleteScanError(TripleWellError):
    exit_code = 3

    def __init__(self, message, found=()):
        super().__init__(message)
        self.found = list(found)


class NodeAmbiguityError(TripleWellError):
    exit_code = 3


class DegenerateFunctionError(TripleWellError):
    exit_code = 3


class DegenerateMinimumError(TripleWellError):
    exit_code = 2


class PrecisionInsufficientError(TripleWellError):
    """Cancellation in a series sum ate more than half the working bits."""

    exit_code = 4
