"""Exception types raised by the package."""


class NeoFuzzyError(Exception):
    """Base class for all errors raised by :mod:`neofuzzy`."""


class InvalidArgument(NeoFuzzyError, ValueError):
    pass


class DimensionMismatch(NeoFuzzyError, ValueError):
    pass


class DegenerateRegressor(NeoFuzzyError, ArithmeticError):
    """Gain accumulator hit zero while the innovation is non-zero."""


class NotWarmedUp(NeoFuzzyError, RuntimeError):
    pass


class CapacityExhausted(NeoFuzzyError, RuntimeError):
    pass


class DataError(NeoFuzzyError, ValueError):
    pass


class ParseError(DataError):
    def __init__(self, line, message=None):
        self.line = line
        super().__init__(message or f"cannot parse value on line {line}")


class SeriesTooShort(DataError):
    pass


class DegenerateRange(DataError):
    pass


class EmptyInput(NeoFuzzyError, ValueError):
    pass


class SnapshotError(NeoFuzzyError, ValueError):
    """Snapshot is corrupted or written by an unsupported format version."""
