"""Exception hierarchy shared by all modules."""


class CodesignError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CodesignError, ValueError):
    """An instance, pattern or selection violates one of its invariants."""


class DimensionMismatch(ValidationError):
    pass


class NegativeCost(ValidationError):
    pass


class InfiniteIOCost(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class NotSquare(ValidationError):
    pass


class UnknownVertex(CodesignError, KeyError):
    pass


class NotIrreducible(CodesignError):
    """Raised when the dynamics pattern is not irreducible.

    The polynomial solver is only exact for irreducible patterns; the
    exhaustive oracle has no such restriction.
    """


class Infeasible(CodesignError):
    """No selection of inputs, outputs and feedback links removes all SFMs."""


class TooLarge(CodesignError):
    """The instance exceeds the size caps of an exhaustive routine."""


class InvalidSpec(CodesignError, ValueError):
    pass
