"""Exception types shared across the package."""


class ForbidError(Exception):
    """Base class for all errors raised by this package."""


class LayoutError(ForbidError, ValueError):
    """Invalid layout data (parse failures, bad sizes, dangling edges)."""


class CoincidentCentersError(ForbidError, ValueError):
    """Two overlapping nodes share the exact same center.

    No finite uniform scale can separate such a pair; callers must jitter
    before asking for a scaling ratio.
    """


class SolverError(ForbidError, RuntimeError):
    """The solver could not produce an overlap-free layout."""
