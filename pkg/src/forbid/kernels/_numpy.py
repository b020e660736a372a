"""Pure numpy/Python kernel backend.

Every value that feeds back into positions or the convergence trace is
computed with the same operation order as the jit backend, so both produce
bit-identical results: elementwise array ops are used only where IEEE
rounding matches the scalar path, pow and accumulations run scalar.
"""

from __future__ import annotations

import math

import numpy as np

from .._splitmix import MASK64, next64, uniform01

NAME = "numpy"

DISTANCE_FLOOR = 1e-9
TWO_PI = 6.283185307179586


def pair_distances(pos: np.ndarray, pi: np.ndarray, pj: np.ndarray) -> np.ndarray:
    dx = pos[pi, 0] - pos[pj, 0]
    dy = pos[pi, 1] - pos[pj, 1]
    return np.sqrt(dx * dx + dy * dy)


def refresh_pair_targets(
    pos: np.ndarray,
    sizes: np.ndarray,
    pi: np.ndarray,
    pj: np.ndarray,
    refdist: np.ndarray,
    alpha: float,
    k: float,
):
    """Classify pairs on current positions; ideal distance and weight per pair."""
    dx = pos[pi, 0] - pos[pj, 0]
    dy = pos[pi, 1] - pos[pj, 1]
    hw = (sizes[pi, 0] + sizes[pj, 0]) * 0.5
    hh = (sizes[pi, 1] + sizes[pj, 1]) * 0.5
    ovl = (np.abs(dx) < hw) & (np.abs(dy) < hh)
    delta = np.where(ovl, np.sqrt(hw * hw + hh * hh), np.maximum(refdist, DISTANCE_FLOOR))
    ka = k * alpha
    expo = np.where(ovl, ka, alpha)
    # scalar pow: the vectorized ufunc rounds differently from the jit path
    weight = np.array(
        [d**e for d, e in zip(delta.tolist(), expo.tolist())], dtype=np.float64
    )
    return delta, weight.reshape(len(delta)), ovl


def relax_sweep(
    pos: np.ndarray,
    pi: np.ndarray,
    pj: np.ndarray,
    delta: np.ndarray,
    weight: np.ndarray,
    eta: float,
    order: np.ndarray,
    direction_key: int,
) -> float:
    """Relax each pair once, in ``order``, updates visible immediately.

    Returns the summed displacement magnitude over all moved endpoints.
    """
    state = direction_key & MASK64
    movement = 0.0
    for p in order.tolist():
        i = int(pi[p])
        j = int(pj[p])
        dx = pos[i, 0] - pos[j, 0]
        dy = pos[i, 1] - pos[j, 1]
        d2 = dx * dx + dy * dy
        if d2 > 0.0:
            d = math.sqrt(d2)
            ux = dx / d
            uy = dy / d
        else:
            d = 0.0
            state, z = next64(state)
            ang = TWO_PI * uniform01(z)
            ux = math.cos(ang)
            uy = math.sin(ang)
        mu = weight[p] * eta
        if mu > 1.0:
            mu = 1.0
        r = 0.5 * mu * (delta[p] - d)
        pos[i, 0] += r * ux
        pos[i, 1] += r * uy
        pos[j, 0] -= r * ux
        pos[j, 1] -= r * uy
        movement += 2.0 * abs(r)
    return movement


def iteration_stats(
    pos: np.ndarray,
    sizes: np.ndarray,
    pi: np.ndarray,
    pj: np.ndarray,
    delta: np.ndarray,
    weight: np.ndarray,
) -> tuple[float, int]:
    """Stress against the given targets plus a fresh strict-overlap count."""
    dx = pos[pi, 0] - pos[pj, 0]
    dy = pos[pi, 1] - pos[pj, 1]
    d = np.sqrt(dx * dx + dy * dy)
    diff = d - delta
    term = weight * (diff * diff)
    stress = 0.0
    for t in term.tolist():  # sequential sum, same order as the jit loop
        stress += t
    hw = (sizes[pi, 0] + sizes[pj, 0]) * 0.5
    hh = (sizes[pi, 1] + sizes[pj, 1]) * 0.5
    count = int(np.count_nonzero((np.abs(dx) < hw) & (np.abs(dy) < hh)))
    return stress, count


def shuffled_order(n: int, key: int) -> np.ndarray:
    """Fisher-Yates permutation of range(n) driven by the splitmix stream."""
    order = list(range(n))
    state = key & MASK64
    for i in range(n - 1, 0, -1):
        state, z = next64(state)
        j = z % (i + 1)
        order[i], order[j] = order[j], order[i]
    return np.asarray(order, dtype=np.int64)
