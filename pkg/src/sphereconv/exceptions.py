"""Error types raised by the geometry layer.

All inherit from GeometryError so callers (CLI, service) can map any geometry
failure to the precondition exit code in one place.
"""


class GeometryError(ValueError):
    """Base class for all geometric precondition and domain failures."""


class ImproperBodyError(GeometryError):
    """Point set admits no open hemisphere, or a witness fails to certify."""


class OutOfChartError(GeometryError):
    """Point is not in the open hemisphere of the chart pole."""


class PreconditionError(GeometryError):
    """An operation precondition does not hold for the given arguments."""


class DomainError(GeometryError):
    """A functional was evaluated outside its finiteness domain."""


class UnsupportedDimensionError(GeometryError):
    """Exact path not available in this ambient dimension."""


class DegenerateError(GeometryError):
    """Input is rank-deficient or otherwise degenerate for this operation."""


class DimensionMismatchError(GeometryError):
    """Operands live in different dimensions."""


class RecordError(GeometryError):
    """A JSON record is malformed or fails validation on parse."""
