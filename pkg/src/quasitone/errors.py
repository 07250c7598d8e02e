"""Exception hierarchy.

Every domain failure derives from :class:`QuasitoneError`; the CLI maps these
to exit status 2 and prints the class name.
"""


class QuasitoneError(Exception):
    pass


class PrecisionExhausted(QuasitoneError):
    """The declared precision of an inexact value cannot decide a comparison."""


class UnknownSymbol(QuasitoneError):
    pass


class InvalidRule(QuasitoneError):
    pass


class LengthExceeded(QuasitoneError):
    pass


class DimensionMismatch(QuasitoneError):
    pass


class ZeroPeriod(QuasitoneError):
    pass


class EmptyScore(QuasitoneError):
    pass


class ParseError(QuasitoneError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidPeriod(ParseError):
    pass


class UnknownPitchName(ParseError):
    pass


class OutOfRange(QuasitoneError):
    pass


class BufferTooLarge(QuasitoneError):
    pass


class ClippingError(QuasitoneError):
    """A rendered sample would exceed full scale at the configured gain."""


class IoFailure(QuasitoneError):
    pass
