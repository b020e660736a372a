"""One optimization pass: randomized per-pair relaxation under an annealing
step-size schedule, with per-iteration target refresh and an exact
null-movement early stop."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import kernels
from ._splitmix import direction_key, shuffle_key
from .model import LayoutInstance
from .stress import StressParams

STOP_EPSILON = 0.1


@dataclass(frozen=True)
class ScheduleParams:
    """Annealing schedule eta(t) = eta_max * exp(-decay * t).

    When eta_max/eta_min are None they are instantiated per pass from the
    weight range: eta_max = 1/w_min (the weakest constraint gets a full
    correction first) and eta_min = STOP_EPSILON/w_max (the strongest moves by
    at most that fraction of its residual last).
    """

    max_iterations: int = 30
    eta_max: Optional[float] = None
    eta_min: Optional[float] = None

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if (self.eta_max is None) != (self.eta_min is None):
            raise ValueError("eta_max and eta_min must be set together")
        if self.eta_max is not None:
            if not (self.eta_max >= self.eta_min > 0):
                raise ValueError(
                    f"need eta_max >= eta_min > 0, got ({self.eta_max}, {self.eta_min})"
                )

    @property
    def is_resolved(self) -> bool:
        return self.eta_max is not None

    @property
    def decay(self) -> float:
        if not self.is_resolved:
            raise ValueError("schedule bounds not resolved yet")
        if self.max_iterations == 1:
            return 0.0
        return math.log(self.eta_max / self.eta_min) / (self.max_iterations - 1)

    def resolved(self, w_min: float, w_max: float) -> "ScheduleParams":
        if self.is_resolved:
            return self
        return ScheduleParams(self.max_iterations, 1.0 / w_min, STOP_EPSILON / w_max)


def step_size(t: int, schedule: ScheduleParams) -> float:
    """eta(t); anchored at eta_max for t=0 and eta_min for the last iteration."""
    if not 0 <= t < schedule.max_iterations:
        raise ValueError(
            f"iteration {t} outside [0, {schedule.max_iterations})"
        )
    return schedule.eta_max * math.exp(-schedule.decay * t)


@dataclass(frozen=True)
class IterationRecord:
    pass_index: int
    iteration_index: int
    stress: float
    overlap_count: int
    scale: float
    total_movement: float


class ConvergenceTrace:
    """Ordered iteration records; (pass, iteration) strictly increasing."""

    def __init__(self) -> None:
        self.records: list[IterationRecord] = []

    def append(self, record: IterationRecord) -> None:
        if self.records:
            last = self.records[-1]
            if (record.pass_index, record.iteration_index) <= (
                last.pass_index,
                last.iteration_index,
            ):
                raise ValueError("trace records must be lexicographically increasing")
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[IterationRecord]:
        return iter(self.records)


def relax_pair(
    x_i,
    x_j,
    delta: float,
    weight: float,
    eta: float,
    rng: Optional[np.random.Generator] = None,
):
    """Move both endpoints to shrink |distance - delta| by the capped fraction
    mu = min(weight * eta, 1); the midpoint stays fixed.

    Coincident points get a uniformly random separation direction from ``rng``.
    """
    x_i = np.asarray(x_i, dtype=np.float64).copy()
    x_j = np.asarray(x_j, dtype=np.float64).copy()
    dx = x_i[0] - x_j[0]
    dy = x_i[1] - x_j[1]
    d2 = dx * dx + dy * dy
    if d2 > 0.0:
        d = math.sqrt(d2)
        ux, uy = dx / d, dy / d
    else:
        if rng is None:
            raise ValueError("coincident points need an rng for the direction draw")
        d = 0.0
        ang = rng.uniform(0.0, 2.0 * math.pi)
        ux, uy = math.cos(ang), math.sin(ang)
    mu = min(weight * eta, 1.0)
    r = 0.5 * mu * (delta - d)
    x_i[0] += r * ux
    x_i[1] += r * uy
    x_j[0] -= r * ux
    x_j[1] -= r * uy
    return x_i, x_j


def run_pass(
    start: LayoutInstance,
    reference: LayoutInstance,
    params: StressParams,
    schedule: ScheduleParams,
    seed: int,
    trace: Optional[ConvergenceTrace] = None,
    *,
    pass_index: int = 0,
    scale: float = 1.0,
) -> LayoutInstance:
    """Run one optimization pass and return the final positions.

    Each iteration refreshes all pair targets against the current positions,
    relaxes every pair once in a seeded shuffled order (in place, so later
    pairs see earlier moves), records stress / overlap count / movement, and
    stops early on exactly zero total movement. Deterministic for fixed
    (inputs, seed, pass_index).
    """
    if start.ids != reference.ids:
        raise ValueError("start and reference layouts have different node sets")
    n = start.n
    pos = start.positions.copy()
    sizes = start.sizes
    pi, pj = np.triu_indices(n, 1)
    n_pairs = len(pi)
    if n_pairs == 0:
        if trace is not None:
            trace.append(IterationRecord(pass_index, 0, 0.0, 0, scale, 0.0))
        return start.with_positions(pos)

    refdist = kernels.pair_distances(reference.positions, pi, pj)
    etas: list[float] = []
    for t in range(schedule.max_iterations):
        delta, weight, _ = kernels.refresh_pair_targets(
            pos, sizes, pi, pj, refdist, params.alpha, params.k
        )
        if t == 0:
            sched = schedule.resolved(float(weight.min()), float(weight.max()))
            etas = [step_size(u, sched) for u in range(sched.max_iterations)]
        order = kernels.shuffled_order(n_pairs, shuffle_key(seed, pass_index, t))
        movement = kernels.relax_sweep(
            pos, pi, pj, delta, weight, etas[t],
            order, direction_key(seed, pass_index, t),
        )
        if trace is not None:
            stress, count = kernels.iteration_stats(pos, sizes, pi, pj, delta, weight)
            trace.append(
                IterationRecord(pass_index, t, stress, count, scale, movement)
            )
        if movement == 0.0:
            break
    return start.with_positions(pos)
