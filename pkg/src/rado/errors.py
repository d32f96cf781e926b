"""Exception hierarchy shared by all rado modules."""


class RadoError(Exception):
    """Base class for every error raised by the package."""


class MeshError(RadoError):
    """Input triangles do not describe a compact 2-manifold-with-boundary."""


class NonManifoldEdge(MeshError):
    pass


class PinchedVertex(MeshError):
    pass


class DegenerateTriangle(MeshError):
    pass


class EmptyBoundary(MeshError):
    pass


class FieldError(RadoError):
    pass


class LengthMismatch(FieldError):
    pass


class NonFiniteValue(FieldError):
    pass


class NonGenericInteriorEdge(FieldError):
    """Raised when an edge carries equal endpoint values where the mode forbids it.

    The offending edges are available as ``edges``.
    """

    def __init__(self, edges):
        self.edges = list(edges)
        shown = ", ".join(map(str, self.edges[:8]))
        more = "" if len(self.edges) <= 8 else f" (+{len(self.edges) - 8} more)"
        super().__init__(f"edges with equal endpoint values: {shown}{more}")


class TieRejected(FieldError):
    pass


class RelaxedBoundaryAtVertex(FieldError):
    pass


class RelaxedBoundaryAtLevel(FieldError):
    pass


class NonRegularClipValue(FieldError):
    pass


class NonRegularRegionBoundary(FieldError):
    pass


class NonManifoldQuotient(RadoError):
    pass


class MissingPositions(RadoError):
    pass


class DegenerateGeometry(RadoError):
    pass


class HasBoundary(RadoError):
    pass


class NoBoundary(RadoError):
    pass


class ResolutionTooCoarse(RadoError):
    pass
