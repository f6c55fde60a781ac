"""Exception hierarchy shared by every module of the package."""


class PultrError(Exception):
    """Base class for all errors raised by this package."""


class DigraphParseError(PultrError, ValueError):
    """Malformed native digraph or template text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidPartitionError(PultrError, ValueError):
    pass


class InvalidTemplateError(PultrError, ValueError):
    """A template whose epsilon maps are not homomorphisms."""


class PreconditionError(PultrError, ValueError):
    """A construction was asked to run outside its domain of validity."""


class ResourceLimitError(PultrError):
    """A size guard refused to build something too large.

    ``estimate`` carries the candidate count that tripped the guard.
    """

    def __init__(self, message, estimate=None, limit=None):
        self.estimate = estimate
        self.limit = limit
        super().__init__(message)


class ConstructionError(PultrError):
    """An internal construction produced something that failed verification."""
