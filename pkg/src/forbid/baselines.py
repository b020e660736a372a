"""Uniform scaling baseline: the trivially correct overlap remover."""

from __future__ import annotations

from .model import LayoutInstance, bounding_box, min_overlap_free_scale, scale_about
from .sgd import ConvergenceTrace
from .solver import SolverResult


def scaling_baseline(original: LayoutInstance) -> SolverResult:
    """Upscale about the bounding-box center by the minimum overlap-free ratio.

    No node moves relative to any other, so orthogonal order, aspect ratio,
    aligned node movement, and triangulation edge-length spread all sit at
    their optima; only the hull area grows (quadratically in the scale).
    """
    scale = min_overlap_free_scale(original)
    origin = bounding_box(original, include_sizes=False).center
    return SolverResult(
        layout=scale_about(original, scale, origin),
        final_scale=scale,
        passes=0,
        trace=ConvergenceTrace(),
    )
