"""Overlap removal for graph layouts by joint stress and scaling optimization."""

from .baselines import scaling_baseline
from .errors import CoincidentCentersError, ForbidError, LayoutError, SolverError
from .layout_io import (
    load_layout,
    parse_agora,
    parse_layout,
    serialize_layout,
    write_trace_csv,
)
from .metrics import (
    MetricsReport,
    Triangulation,
    convex_hull_area,
    delaunay,
    el_rsdd,
    evaluate,
    gs_bb_iar,
    nm_dm_imse,
    oo_nni,
    sp_ch_a,
)
from .model import (
    BoundingBox,
    LayoutInstance,
    NodeBox,
    OverlapSet,
    bounding_box,
    min_overlap_free_scale,
    overlaps,
    scale_about,
)
from .scan import brute_force_overlaps, find_overlaps, has_overlap
from .sgd import (
    ConvergenceTrace,
    IterationRecord,
    ScheduleParams,
    relax_pair,
    run_pass,
    step_size,
)
from .solver import SolverConfig, SolverResult, Variant, solve
from .stress import (
    PairTargets,
    StressParams,
    ideal_distance,
    pair_weight,
    refresh_targets,
    stress_value,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "BoundingBox",
    "CoincidentCentersError",
    "ConvergenceTrace",
    "ForbidError",
    "IterationRecord",
    "LayoutError",
    "LayoutInstance",
    "MetricsReport",
    "NodeBox",
    "OverlapSet",
    "PairTargets",
    "ScheduleParams",
    "SolverConfig",
    "SolverError",
    "SolverResult",
    "StressParams",
    "Triangulation",
    "Variant",
    "bounding_box",
    "brute_force_overlaps",
    "convex_hull_area",
    "delaunay",
    "el_rsdd",
    "evaluate",
    "find_overlaps",
    "gs_bb_iar",
    "has_overlap",
    "ideal_distance",
    "load_layout",
    "min_overlap_free_scale",
    "nm_dm_imse",
    "oo_nni",
    "overlaps",
    "pair_weight",
    "parse_agora",
    "parse_layout",
    "refresh_targets",
    "relax_pair",
    "render_svg",
    "run_pass",
    "scale_about",
    "scaling_baseline",
    "serialize_layout",
    "solve",
    "sp_ch_a",
    "step_size",
    "stress_value",
    "write_trace_csv",
]
