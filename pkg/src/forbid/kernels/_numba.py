"""numba-jit kernel backend; arithmetic mirrors the numpy fallback exactly."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

NAME = "numba"

DISTANCE_FLOOR = 1e-9
TWO_PI = 6.283185307179586

# uint64 constants must live at module level: large literals inside jit code
# would be typed as int64.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_U11 = np.uint64(11)
_TO_UNIT = 2.0**-53


@njit(cache=True)
def _mix(state):
    state = state + _GOLDEN
    z = state
    z = (z ^ (z >> _U30)) * _MIX1
    z = (z ^ (z >> _U27)) * _MIX2
    z = z ^ (z >> _U31)
    return state, z


@njit(cache=True)
def _pair_distances(pos, pi, pj):
    m = pi.shape[0]
    out = np.empty(m, np.float64)
    for p in range(m):
        dx = pos[pi[p], 0] - pos[pj[p], 0]
        dy = pos[pi[p], 1] - pos[pj[p], 1]
        out[p] = math.sqrt(dx * dx + dy * dy)
    return out


@njit(cache=True)
def _refresh_pair_targets(pos, sizes, pi, pj, refdist, alpha, k):
    m = pi.shape[0]
    delta = np.empty(m, np.float64)
    weight = np.empty(m, np.float64)
    ovl = np.empty(m, np.bool_)
    ka = k * alpha
    for p in range(m):
        i = pi[p]
        j = pj[p]
        dx = pos[i, 0] - pos[j, 0]
        dy = pos[i, 1] - pos[j, 1]
        hw = (sizes[i, 0] + sizes[j, 0]) * 0.5
        hh = (sizes[i, 1] + sizes[j, 1]) * 0.5
        if abs(dx) < hw and abs(dy) < hh:
            ovl[p] = True
            d = math.sqrt(hw * hw + hh * hh)
            delta[p] = d
            weight[p] = d**ka
        else:
            ovl[p] = False
            d = refdist[p]
            if d < DISTANCE_FLOOR:
                d = DISTANCE_FLOOR
            delta[p] = d
            weight[p] = d**alpha
    return delta, weight, ovl


@njit(cache=True)
def _relax_sweep(pos, pi, pj, delta, weight, eta, order, direction_key):
    state = direction_key
    movement = 0.0
    for t in range(order.shape[0]):
        p = order[t]
        i = pi[p]
        j = pj[p]
        dx = pos[i, 0] - pos[j, 0]
        dy = pos[i, 1] - pos[j, 1]
        d2 = dx * dx + dy * dy
        if d2 > 0.0:
            d = math.sqrt(d2)
            ux = dx / d
            uy = dy / d
        else:
            d = 0.0
            state, z = _mix(state)
            ang = TWO_PI * (float(z >> _U11) * _TO_UNIT)
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


@njit(cache=True)
def _iteration_stats(pos, sizes, pi, pj, delta, weight):
    m = pi.shape[0]
    stress = 0.0
    count = 0
    for p in range(m):
        i = pi[p]
        j = pj[p]
        dx = pos[i, 0] - pos[j, 0]
        dy = pos[i, 1] - pos[j, 1]
        d = math.sqrt(dx * dx + dy * dy)
        diff = d - delta[p]
        stress += weight[p] * (diff * diff)
        hw = (sizes[i, 0] + sizes[j, 0]) * 0.5
        hh = (sizes[i, 1] + sizes[j, 1]) * 0.5
        if abs(dx) < hw and abs(dy) < hh:
            count += 1
    return stress, count


@njit(cache=True)
def _shuffled_order(n, key):
    order = np.arange(n, dtype=np.int64)
    state = key
    for i in range(n - 1, 0, -1):
        state, z = _mix(state)
        j = z % np.uint64(i + 1)
        tmp = order[i]
        order[i] = order[int(j)]
        order[int(j)] = tmp
    return order


def pair_distances(pos, pi, pj):
    return _pair_distances(pos, pi, pj)


def refresh_pair_targets(pos, sizes, pi, pj, refdist, alpha, k):
    return _refresh_pair_targets(pos, sizes, pi, pj, refdist, float(alpha), float(k))


def relax_sweep(pos, pi, pj, delta, weight, eta, order, direction_key):
    return _relax_sweep(
        pos, pi, pj, delta, weight, float(eta), order, np.uint64(direction_key)
    )


def iteration_stats(pos, sizes, pi, pj, delta, weight):
    stress, count = _iteration_stats(pos, sizes, pi, pj, delta, weight)
    return float(stress), int(count)


def shuffled_order(n, key):
    if n == 0:
        return np.empty(0, dtype=np.int64)
    return _shuffled_order(n, np.uint64(key))
