"""Outer solver: initial unscaled pass, then binary search over the uniform
upscale ratio with one optimization pass per probe.

Two variants: the default keeps optimizing the current working layout across
probes; the prime variant restarts every probe from the scaled original,
trading speed for layout preservation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._splitmix import MASK64, jitter_key, next64, uniform01
from .errors import CoincidentCentersError, SolverError
from .model import LayoutInstance, bounding_box, min_overlap_free_scale, scale_about
from .scan import has_overlap
from .sgd import ConvergenceTrace, ScheduleParams, run_pass
from .stress import StressParams

_JITTER_ATTEMPTS = 3


class Variant(enum.Enum):
    FORBID = "forbid"
    FORBID_PRIME = "forbid-prime"

    @classmethod
    def from_name(cls, name: str) -> "Variant":
        for v in cls:
            if v.value == name:
                return v
        raise ValueError(f"unknown variant {name!r}")


@dataclass(frozen=True)
class SolverConfig:
    variant: Variant = Variant.FORBID
    scale_step: float = 0.1
    stress_params: StressParams = field(default_factory=StressParams)
    schedule: ScheduleParams = field(default_factory=ScheduleParams)
    seed: int = 42

    def __post_init__(self) -> None:
        if not self.scale_step > 0:
            raise ValueError(f"scale_step must be > 0, got {self.scale_step}")


@dataclass
class SolverResult:
    layout: LayoutInstance
    final_scale: float
    passes: int
    trace: ConvergenceTrace


def _coincident_overlapping(layout: LayoutInstance) -> list[int]:
    """Indices of nodes in overlapping pairs with zero center distance."""
    n = layout.n
    if n < 2:
        return []
    pos = layout.positions
    pi, pj = np.triu_indices(n, 1)
    same = (pos[pi, 0] == pos[pj, 0]) & (pos[pi, 1] == pos[pj, 1])
    # Coincident centers always overlap, sizes being positive.
    hit = np.flatnonzero(same)
    out: set[int] = set()
    for k in hit:
        out.add(int(pi[k]))
        out.add(int(pj[k]))
    return sorted(out)


def _jitter(layout: LayoutInstance, seed: int, attempt: int) -> LayoutInstance:
    """Nudge nodes from coincident overlapping pairs by a tiny seeded offset."""
    affected = _coincident_overlapping(layout)
    pos = layout.positions.copy()
    state = jitter_key(seed, attempt) & MASK64
    for i in affected:
        m = 1e-4 * min(float(layout.sizes[i, 0]), float(layout.sizes[i, 1]))
        state, z = next64(state)
        pos[i, 0] += (2.0 * uniform01(z) - 1.0) * m
        state, z = next64(state)
        pos[i, 1] += (2.0 * uniform01(z) - 1.0) * m
    return layout.with_positions(pos)


def solve(original: LayoutInstance, config: SolverConfig) -> SolverResult:
    """Remove all overlaps; returns an overlap-free layout and its scale.

    A first pass runs at scale 1; if it resolves everything no scaling
    happens. Otherwise the upscale ratio is binary-searched in
    [1, min_overlap_free_scale] down to scale_step precision, one optimization
    pass per probe, and the most compact overlap-free layout seen is returned.
    The scaled original at the upper bound guarantees a feasible fallback.
    """
    trace = ConvergenceTrace()
    working = run_pass(
        original,
        original,
        config.stress_params,
        config.schedule,
        config.seed,
        trace,
        pass_index=0,
        scale=1.0,
    )
    passes = 1
    if not has_overlap(working):
        return SolverResult(working, 1.0, passes, trace)

    effective = original
    for attempt in range(_JITTER_ATTEMPTS + 1):
        try:
            s_max = min_overlap_free_scale(effective)
            break
        except CoincidentCentersError as err:
            if attempt == _JITTER_ATTEMPTS:
                raise SolverError(
                    f"coincident centers persist after {_JITTER_ATTEMPTS} jitter attempts"
                ) from err
            effective = _jitter(effective, config.seed, attempt)

    origin = bounding_box(effective, include_sizes=False).center
    low, up = 1.0, s_max
    cur = (low + up) / 2.0
    best_layout = scale_about(effective, s_max, origin)
    best_scale = s_max
    pass_succeeded = False
    applied = 1.0
    overlap = True
    terminal_tried = False

    while overlap or (up - low > config.scale_step):
        restart_from_scaled = False
        if up - low <= config.scale_step:
            if terminal_tried:
                break  # interval resolved; fall back to the cached feasible layout
            terminal_tried = True
            if not pass_succeeded:
                # No probe produced an overlap-free layout yet; spend the last
                # pass at the upper bound, starting from the scaled original,
                # which is overlap-free there and therefore finishes clean.
                cur = up
                restart_from_scaled = True
        reference = scale_about(effective, cur, origin)
        if config.variant is Variant.FORBID and not restart_from_scaled:
            working = scale_about(working, cur / applied, origin)
            applied = cur
        else:
            working = reference
            applied = cur
        working = run_pass(
            working,
            reference,
            config.stress_params,
            config.schedule,
            config.seed,
            trace,
            pass_index=passes,
            scale=cur,
        )
        passes += 1
        overlap = has_overlap(working)
        if overlap:
            low = cur
        else:
            up = cur
            best_layout = working
            best_scale = cur
            pass_succeeded = True
        cur = (low + up) / 2.0

    return SolverResult(best_layout, best_scale, passes, trace)
