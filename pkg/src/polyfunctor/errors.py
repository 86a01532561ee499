"""Exception types shared across the library."""


class PolyfunctorError(Exception):
    """Base class for all library errors."""


class EmptyInput(PolyfunctorError):
    """An inequality system with no feasible point, or an empty point list."""


class UnboundedInput(PolyfunctorError):
    """An inequality system describing an unbounded set."""


class DimensionMismatch(PolyfunctorError):
    """Operands live in incompatible ambient spaces."""


class PointNotInImage(PolyfunctorError):
    """Requested fiber point lies outside the image of the map."""


class OriginNotInteriorError(PolyfunctorError):
    """Polar or bipyramid input without the origin in its relative interior."""


class ImageDimTooHigh(PolyfunctorError):
    """Chamber complexes only support images of dimension at most 2."""


class NotConvexPosition(PolyfunctorError):
    """Secondary-polytope input points are not in convex position."""


class DegenerateHeights(PolyfunctorError):
    """Truncated-prism heights are not affine, not positive, or give a parallel top."""


class EmptyFiber(PolyfunctorError):
    """The requested hom fiber is empty (map not in the image)."""


class SearchBudgetExceeded(PolyfunctorError):
    """An equivalence or witness search ran out of its work budget."""


class ScaleLimitExceeded(PolyfunctorError):
    """Input exceeds the documented desk-scale limits of an operation."""


class DimensionTooHigh(PolyfunctorError):
    """SVG rendering supports ambient dimension at most 3."""
