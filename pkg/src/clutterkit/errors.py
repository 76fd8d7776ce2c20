"""Exception hierarchy shared by every clutterkit module."""


class ClutterError(Exception):
    """Base class for all errors raised by clutterkit."""


class DuplicateEdge(ClutterError):
    pass


class NotAntichain(ClutterError):
    def __init__(self, smaller, larger):
        self.pair = (smaller, larger)
        super().__init__(f"edge {sorted(smaller)} is contained in edge {sorted(larger)}")


class UnknownLabel(ClutterError):
    pass


class DegenerateClutter(ClutterError):
    """Raised when an analysis op receives the empty clutter or one containing the empty set."""


class CapExceeded(ClutterError):
    """A configured size guard was hit; results are never silently truncated."""


class ParseError(ClutterError):
    pass


class Infeasible(ClutterError):
    pass


class Unbounded(ClutterError):
    pass


class UnboundedPolyhedron(ClutterError):
    pass


class EmptyInput(ClutterError):
    pass


class NotPrime(ClutterError):
    pass


class AxiomViolation(ClutterError):
    pass


class NotApplicable(ClutterError):
    pass


class DegenerateGraph(ClutterError):
    pass
