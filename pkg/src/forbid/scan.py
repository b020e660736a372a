"""Scan-line overlap detection plus the all-pairs oracle used for testing."""

from __future__ import annotations

from bisect import bisect_left, insort

import numpy as np

from .model import LayoutInstance, OverlapSet


def brute_force_overlaps(layout: LayoutInstance) -> OverlapSet:
    """O(N^2) reference enumeration of strictly overlapping pairs."""
    n = layout.n
    if n < 2:
        return OverlapSet()
    pos, sizes = layout.positions, layout.sizes
    pi, pj = np.triu_indices(n, 1)
    hit = (
        np.abs(pos[pi, 0] - pos[pj, 0]) < (sizes[pi, 0] + sizes[pj, 0]) * 0.5
    ) & (np.abs(pos[pi, 1] - pos[pj, 1]) < (sizes[pi, 1] + sizes[pj, 1]) * 0.5)
    idx = np.flatnonzero(hit)
    return OverlapSet(frozenset((int(pi[k]), int(pj[k])) for k in idx))


def _sweep(layout: LayoutInstance, first_hit_only: bool):
    """Sweep rectangles by x-interval; probe y-neighbors in the active set.

    Close events sort before open events at equal x so x-tangent boxes never
    co-reside, matching the strict predicate. Returns either a bool (presence)
    or the full pair set.
    """
    pos, sizes = layout.positions, layout.sizes
    n = layout.n
    x = pos[:, 0].tolist()
    y = pos[:, 1].tolist()
    w = sizes[:, 0].tolist()
    h = sizes[:, 1].tolist()
    ylo = (pos[:, 1] - sizes[:, 1] * 0.5).tolist()
    yhi = (pos[:, 1] + sizes[:, 1] * 0.5).tolist()

    events = []
    for i in range(n):
        events.append((x[i] - w[i] * 0.5, 1, i))  # open
        events.append((x[i] + w[i] * 0.5, 0, i))  # close
    events.sort()

    active: list[tuple[float, int]] = []  # sorted by (y-low, id)
    heights: list[float] = []  # active node heights, sorted
    found: set[tuple[int, int]] = set()

    def probe(i: int, s: int) -> bool:
        # Same arithmetic as the brute-force predicate, so results agree exactly.
        return abs(x[i] - x[s]) < (w[i] + w[s]) * 0.5 and abs(y[i] - y[s]) < (
            h[i] + h[s]
        ) * 0.5

    for _, kind, i in events:
        key = (ylo[i], i)
        if kind == 0:
            active.pop(bisect_left(active, key))
            heights.pop(bisect_left(heights, h[i]))
            continue
        at = bisect_left(active, key)
        k = at
        while k < len(active):
            lo_s, s = active[k]
            if lo_s >= yhi[i]:
                break
            if probe(i, s):
                if first_hit_only:
                    return True
                found.add((i, s) if i < s else (s, i))
            k += 1
        if heights:
            cutoff = ylo[i] - heights[-1]
            k = at - 1
            while k >= 0:
                lo_s, s = active[k]
                if lo_s <= cutoff:
                    break
                if probe(i, s):
                    if first_hit_only:
                        return True
                    found.add((i, s) if i < s else (s, i))
                k -= 1
        insort(active, key)
        insort(heights, h[i])

    return False if first_hit_only else found


def has_overlap(layout: LayoutInstance) -> bool:
    """True iff at least one pair strictly overlaps; O(N log N) sweep."""
    if layout.n < 2:
        return False
    return _sweep(layout, first_hit_only=True)


def find_overlaps(layout: LayoutInstance) -> OverlapSet:
    """Enumerate all strictly overlapping pairs via the sweep."""
    if layout.n < 2:
        return OverlapSet()
    return OverlapSet(frozenset(_sweep(layout, first_hit_only=False)))
