"""Exception types shared across the package."""


class IsoptopeError(Exception):
    """Base class for all package errors."""


class InvalidInput(IsoptopeError):
    """Malformed arguments or configuration."""


class SingularMatrix(IsoptopeError):
    """Linear system has no reliable solution (pivot below tolerance)."""


class NotSymmetric(IsoptopeError):
    """Matrix expected to be symmetric is not."""


class NotPositiveDefinite(IsoptopeError):
    """Matrix expected to be SPD has a non-positive eigenvalue."""


class InvalidPolytope(IsoptopeError):
    """Vertex/facet data violates a polytope invariant."""


class DegenerateSimplex(IsoptopeError):
    """Simplex vertices are affinely dependent."""


class DegenerateInput(IsoptopeError):
    """Point set does not affinely span the ambient space."""


class OutsideProjection(IsoptopeError):
    """Query point is outside the body's shadow on the projection plane."""


class UnboundedOrEmpty(IsoptopeError):
    """Halfspace intersection has no vertices or admits a recession direction."""


class NotIsotropic(IsoptopeError):
    """Body must be in isotropic position (centroid 0, covariance I)."""


class UnboundedResult(IsoptopeError):
    """Hinging produced an unbounded body."""


class DegenerateResult(IsoptopeError):
    """Construction produced a lower-dimensional or empty body."""


class NotARidge(IsoptopeError):
    """Vertex index set is not a (d-2)-face shared by exactly two facets."""


class DegenerateHyperplane(IsoptopeError):
    """Ridge vertices and the origin do not span a (d-1)-dimensional hyperplane."""


class NotSymmetricAboutHyperplane(IsoptopeError):
    """Body is not reflection-symmetric about the requested hyperplane."""


class ProjectionNotSimplex(IsoptopeError):
    """Projection of the body onto the hyperplane is not a simplex."""
