"""Exception hierarchy for geometric and I/O failures.

Geometric errors map to CLI exit code 2, I/O errors to exit code 3.
Absence of a circumcenter is NOT an error (an empty result list is a
meaningful geometric outcome), so there is no exception for it.
"""


class GeometryError(Exception):
    """Base class for all geometric failures."""


class TooFewVertices(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class DuplicateVertex(GeometryError):
    pass


class OutsideDomain(GeometryError):
    pass


class PointOnBoundary(GeometryError):
    """Point within the boundary guard band; distances diverge there."""


class CoincidentPoints(GeometryError):
    pass


class CoincidentSites(GeometryError):
    pass


class NegativeRadius(GeometryError):
    pass


class BisectorDegenerate(GeometryError):
    """Bisector endpoints on the domain boundary could not be resolved."""


class OutOfRange(GeometryError):
    pass


class DuplicateSites(GeometryError):
    pass


class OnEdge(GeometryError):
    """Query point lies on a diagram edge within tolerance; cell ambiguous."""


class SelfIntersectingInput(GeometryError):
    pass


class EmptyInput(GeometryError):
    pass


class SceneIOError(Exception):
    """Base class for scene persistence failures."""


class ParseError(SceneIOError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaMismatch(SceneIOError):
    pass
