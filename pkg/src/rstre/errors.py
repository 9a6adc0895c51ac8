"""Exception types raised across the package."""


class RstreError(Exception):
    """Base class for package errors."""


class InvalidArgumentError(RstreError, ValueError):
    pass


class PartialCoverError(RstreError):
    """A walk hit its step budget before covering the graph.

    ``trace`` holds whatever was produced before the budget ran out.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NotApplicableError(RstreError):
    pass


class NoSpanningTreeError(RstreError):
    pass


class SizeLimitError(RstreError):
    pass


class ConfigError(RstreError):
    """Bad configuration; ``context`` names the offending line or flag."""

    def __init__(self, message, context=None):
        if context:
            message = f"{context}: {message}"
        super().__init__(message)
        self.context = context
