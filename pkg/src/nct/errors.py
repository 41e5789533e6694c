"""Exception hierarchy shared by every structure in the package."""


class NCTError(Exception):
    """Base class for all errors raised by :mod:`nct`."""


class OutOfBounds(NCTError, IndexError):
    pass


class NoSuchOccurrence(NCTError, LookupError):
    pass


class MalformedTree(NCTError, ValueError):
    pass


class DegenerateTree(NCTError, ValueError):
    pass


class NoOwningPiece(NCTError, LookupError):
    pass


class AlignmentViolation(NCTError, ValueError):
    pass


class ParameterInfeasible(NCTError, ValueError):
    pass


class ColorAbsent(NCTError, LookupError):
    pass


class NoAlphaDescendant(NCTError, LookupError):
    pass


class InputError(NCTError, ValueError):
    """A tree file or index file could not be parsed."""
