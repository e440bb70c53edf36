"""Exception types shared across the toolkit."""


class FardiffError(Exception):
    """Base class for all toolkit errors."""


class InputError(FardiffError, ValueError):
    """Invalid input: bad parameter values, malformed data, broken preconditions."""


class ParseError(InputError):
    """A file could not be parsed; the message pinpoints the offending row or cell."""


class NumericError(FardiffError, RuntimeError):
    """A numerical routine failed to meet its accuracy contract."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
