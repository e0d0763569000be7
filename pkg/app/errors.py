class SliderError(Exception):
    """Base class for every error raised by the sliding index."""


class InvariantViolation(SliderError, AssertionError):
    """A structural invariant was broken. Never recoverable, never caught internally."""


class WindowRangeError(SliderError, IndexError):
    """A stream position outside the live window [start, n) was read."""


class QueryError(SliderError, ValueError):
    pass


class ProtocolError(SliderError, ValueError):
    """Malformed line-protocol command. The CLI reports it as `ERR <reason>`."""


class ConfigError(SliderError, ValueError):
    pass
