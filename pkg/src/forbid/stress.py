"""Stress model: ideal pair distances, pair weights, and stress evaluation.

Overlapping pairs target the corner-tangent separation, everything else
targets its distance in the reference layout; weights decay with the target
distance, with an extra exponent factor k on overlapping pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import LayoutInstance, NodeBox

DISTANCE_FLOOR = 1e-9


@dataclass(frozen=True)
class StressParams:
    """Weight exponent ``alpha`` (< 0) and overlap weight factor ``k``."""

    alpha: float = -2.0
    k: float = 1.0

    def __post_init__(self) -> None:
        if not self.alpha < 0:
            raise ValueError(f"alpha must be < 0, got {self.alpha}")


class PairTargets:
    """Per-pair ideal distance, weight, and overlap flag for all i < j pairs."""

    __slots__ = ("pair_i", "pair_j", "delta", "weight", "is_overlap")

    def __init__(self, pair_i, pair_j, delta, weight, is_overlap) -> None:
        self.pair_i = pair_i
        self.pair_j = pair_j
        self.delta = delta
        self.weight = weight
        self.is_overlap = is_overlap

    @property
    def n_pairs(self) -> int:
        return len(self.delta)


def ideal_distance(
    a: NodeBox, b: NodeBox, overlapping: bool, reference_distance: float
) -> float:
    """Corner-tangent center distance if overlapping, else the reference distance."""
    if overlapping:
        hw = (a.width + b.width) / 2
        hh = (a.height + b.height) / 2
        return math.sqrt(hw * hw + hh * hh)
    return max(reference_distance, DISTANCE_FLOOR)


def pair_weight(delta: float, overlapping: bool, params: StressParams) -> float:
    if not delta > 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    expo = params.k * params.alpha if overlapping else params.alpha
    return delta**expo


def refresh_targets(
    current: LayoutInstance, reference: LayoutInstance, params: StressParams
) -> PairTargets:
    """Recompute targets for every pair against the current overlap state.

    Overlap flags come from the current positions; non-overlap ideal distances
    come from the reference layout (the original, scaled to the active ratio).
    """
    if current.ids != reference.ids:
        raise ValueError("current and reference layouts have different node sets")
    pi, pj = np.triu_indices(current.n, 1)
    refdist = kernels.pair_distances(reference.positions, pi, pj)
    delta, weight, ovl = kernels.refresh_pair_targets(
        current.positions, current.sizes, pi, pj, refdist, params.alpha, params.k
    )
    return PairTargets(pi, pj, delta, weight, ovl)


def stress_value(current: LayoutInstance, targets: PairTargets) -> float:
    """Weighted sum of squared residuals between pair distances and targets."""
    expected = current.n * (current.n - 1) // 2
    if targets.n_pairs != expected:
        raise ValueError(
            f"targets cover {targets.n_pairs} pairs, layout has {expected}"
        )
    if targets.n_pairs == 0:
        return 0.0
    stress, _ = kernels.iteration_stats(
        current.positions,
        current.sizes,
        targets.pair_i,
        targets.pair_j,
        targets.delta,
        targets.weight,
    )
    return stress
