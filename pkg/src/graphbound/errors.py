"""Exception hierarchy shared by every module."""


class GraphboundError(ValueError):
    """Base class for all input errors raised by graphbound."""


class FormatError(GraphboundError):
    """A graph or matrix text file could not be parsed."""


class DisconnectedInput(GraphboundError):
    pass


class DegenerateInput(GraphboundError):
    pass


class FamilyMismatch(GraphboundError):
    pass


class NotMetric(GraphboundError):
    pass


class NotRealizable(GraphboundError):
    pass


class TooSmall(GraphboundError):
    pass


class InvalidLeafMatrix(GraphboundError):
    pass


class NotOneBlock(GraphboundError):
    pass


class NotUnicyclicBoundary(GraphboundError):
    pass


class BoundExceeded(GraphboundError):
    pass
