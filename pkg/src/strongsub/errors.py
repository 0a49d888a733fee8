"""Exception hierarchy shared across the package."""


class StrongSubError(Exception):
    """Base class for all errors raised by this package."""


class DigraphError(StrongSubError, ValueError):
    """Invalid digraph construction or edit."""


class LoopError(DigraphError):
    pass


class DuplicateArcError(DigraphError):
    pass


class VertexRangeError(DigraphError):
    pass


class ArcNotFoundError(DigraphError):
    pass


class ParseError(DigraphError):
    """Malformed ``.dg`` or JSON input."""


class NotStrongError(StrongSubError, ValueError):
    pass


class UnsupportedFamilyError(StrongSubError, ValueError):
    pass


class SearchLimitError(StrongSubError):
    """An exact search hit its node or time budget.

    ``lower`` is the size of the best packing found, ``upper`` the smallest
    level not yet refuted minus one; the true value lies in ``[lower, upper]``.
    """

    def __init__(self, message, lower=None, upper=None, subset=None, witness=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.subset = subset
        self.witness = witness
