"""Exception types raised across the package."""


class TraceRepairError(Exception):
    """Base class for every error raised by tracerepair."""


class FieldSizeError(TraceRepairError, ValueError):
    """Requested field exceeds the configured size cap."""


class FieldConstructionError(TraceRepairError, ValueError):
    """Invalid tower parameters, or a defining polynomial that is not primitive."""


class DegenerateInput(TraceRepairError, ValueError):
    pass


class RankError(TraceRepairError, ValueError):
    pass


class ShapeError(TraceRepairError, ValueError):
    pass


class DegreeError(TraceRepairError, ValueError):
    pass


class PatternError(TraceRepairError, ValueError):
    """Erasure pattern has the wrong size or repeats a position."""


class DivisibilityError(TraceRepairError, ValueError):
    """Scheme needs the characteristic to divide the extension degree t."""


class NotCorrectable(TraceRepairError, ValueError):
    """Three-erasure pattern fails the kernel-ratio condition."""
