"""Exception hierarchy shared by all modules."""


class MFError(Exception):
    """Base class for every error raised by mfcat."""


class RingMismatch(MFError):
    pass


class PotentialMismatch(MFError):
    pass


class NotAFactorization(MFError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotClosed(MFError):
    pass


class PotentialNotUnit(MFError):
    pass


class PotentialNotZero(MFError):
    pass


class CompositionNonzero(MFError):
    pass


class IllDefinedRingMap(MFError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class LengthMismatch(MFError):
    pass


class NotDivisible(MFError):
    pass


class NotSurjective(MFError):
    def __init__(self, message, basis_index=None):
        super().__init__(message)
        self.basis_index = basis_index


class ScriptError(MFError):
    """Parse or name-resolution error in an .mfk script, with a position."""

    def __init__(self, message, line=0, column=0, kind="syntax"):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
        self.kind = kind  # syntax, redeclaration, unknown_name, arity, type


class Unavailable(MFError):
    """A script name whose declaration failed at run time."""
