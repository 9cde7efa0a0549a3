"""Exception hierarchy shared by every module."""


class HolmapsError(Exception):
    """Base class for all errors raised by the package."""


class ParameterError(HolmapsError, ValueError):
    """A parameter is outside the domain of the operation."""


class UnsupportedRegimeError(HolmapsError):
    """The parameters are valid but fall in a regime the library does not model."""


class ConsistencyError(HolmapsError, AssertionError):
    """Two independent computations disagree. Never expected to fire."""


class ResourceLimitError(HolmapsError):
    """A desk-scale bound was exceeded; ``partial`` holds what was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
