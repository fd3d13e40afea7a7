"""Exception hierarchy shared by all troplanar modules."""


class TroplanarError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(TroplanarError):
    """Point set is empty, collinear or otherwise not two-dimensional."""


class InvalidTransform(TroplanarError):
    """Affine map is not unimodular."""


class ConfigMismatch(TroplanarError):
    """Objects refer to different point configurations."""


class InvalidTriangulation(TroplanarError):
    """Triangle set fails the unimodular triangulation invariants."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FlipNotAllowed(TroplanarError):
    """Edge is on the boundary or its quadrilateral is not strictly convex."""


class SplitNotRefined(TroplanarError):
    """Split edge is not an edge of the triangulation."""


class NotConnected(TroplanarError):
    pass


class NotACutEdge(TroplanarError):
    pass


class NotACycle(TroplanarError):
    pass


class OutOfRange(TroplanarError):
    pass


class OutOfScope(TroplanarError):
    pass


class NotPlanar(TroplanarError):
    pass


class DegenerateType(TroplanarError):
    """Anti-honeycomb parameters do not define a usable polygon."""


class ParseError(TroplanarError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
