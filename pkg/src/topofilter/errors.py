"""Exception hierarchy shared by all topofilter modules."""


class TopoFilterError(Exception):
    """Base class for every error raised by this package."""


# line complexes
class EmptyComplex(TopoFilterError, ValueError):
    pass


class InvalidMetric(TopoFilterError, ValueError):
    pass


class UnknownSimplex(TopoFilterError, IndexError):
    pass


# linear algebra
class ShapeError(TopoFilterError, ValueError):
    pass


# coefficients
class EmptyFilter(TopoFilterError, ValueError):
    pass


class DegenerateFilter(TopoFilterError, ValueError):
    pass


class InvalidCoefficient(TopoFilterError, ValueError):
    pass


class NotFIR(TopoFilterError, ValueError):
    pass


class NotAllPole(TopoFilterError, ValueError):
    pass


class NoState(TopoFilterError, ValueError):
    """Raised when a state-space model is requested for an order-0 filter."""


# signals
class InvalidSignal(TopoFilterError, ValueError):
    pass
