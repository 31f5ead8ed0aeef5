"""Exception hierarchy shared by all wavecast modules.

Every error carries a distinct CLI exit code (see ``EXIT_CODES``) so
shell callers can branch on failure class without parsing messages.
"""


class WavecastError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(WavecastError):
    def __init__(self, row, column, detail=""):
        self.row = row
        self.column = column
        msg = f"cannot parse row {row}, column {column!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EmptySeries(WavecastError):
    pass


class NonMonotonicTimestamps(WavecastError):
    pass


class DegenerateSplit(WavecastError):
    pass


class WindowTooLarge(WavecastError):
    pass


class UnknownWavelet(WavecastError):
    pass


class FilterTableError(WavecastError):
    """A coefficient table failed its perfect-reconstruction probe."""


class SignalTooShort(WavecastError):
    pass


class TooManyLevels(WavecastError):
    def __init__(self, max_allowed, requested=None):
        self.max_allowed = max_allowed
        msg = f"decomposition depth exceeds maximum usable level {max_allowed}"
        if requested is not None:
            msg += f" (requested {requested})"
        super().__init__(msg)


class ShapeMismatch(WavecastError):
    pass


class EmptyDataset(WavecastError):
    pass


class InvalidHyperparameter(WavecastError):
    def __init__(self, name, detail=""):
        self.name = name
        msg = f"invalid hyperparameter {name!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class TooFewSamples(WavecastError):
    pass


class LengthMismatch(WavecastError):
    pass


class ZeroDenominator(WavecastError):
    pass


class InsufficientHistory(WavecastError):
    pass


class InvalidConfig(WavecastError):
    pass


# Exit-code table used by the CLI; 1 is reserved for unexpected crashes.
EXIT_CODES = {
    InvalidConfig: 2,
    ParseError: 3,
    EmptySeries: 4,
    NonMonotonicTimestamps: 5,
    DegenerateSplit: 6,
    WindowTooLarge: 7,
    UnknownWavelet: 8,
    TooManyLevels: 9,
    SignalTooShort: 10,
    ShapeMismatch: 11,
    EmptyDataset: 12,
    InvalidHyperparameter: 13,
    TooFewSamples: 14,
    LengthMismatch: 15,
    ZeroDenominator: 16,
    InsufficientHistory: 17,
    FilterTableError: 18,
}


def exit_code_for(exc):
    """Map an exception to the CLI exit code for its class."""
    for klass, code in EXIT_CODES.items():
        if isinstance(exc, klass):
            return code
    if isinstance(exc, FileNotFoundError):
        return 19
    return 1
