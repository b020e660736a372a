"""Layout quality metrics comparing an initial layout with an overlap-free one.

All five are oriented lower-is-better and operate on node centers only
(bounding boxes and hulls ignore node extents). The geometric primitives,
monotone-chain convex hull and incremental Delaunay triangulation, live here
as well.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .model import LayoutInstance, bounding_box


@dataclass(frozen=True)
class MetricsReport:
    oo_nni: float
    sp_ch_a: float
    gs_bb_iar: float
    nm_dm_imse: float
    el_rsdd: float

    def as_dict(self) -> dict[str, float]:
        return {
            "oo_nni": self.oo_nni,
            "sp_ch_a": self.sp_ch_a,
            "gs_bb_iar": self.gs_bb_iar,
            "nm_dm_imse": self.nm_dm_imse,
            "el_rsdd": self.el_rsdd,
        }


# ---------------------------------------------------------------------------
# Geometric primitives
# ---------------------------------------------------------------------------


def convex_hull_area(points) -> float:
    """Area of the convex hull of 2D points; 0 for degenerate sets."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(pts) < 1:
        raise ValueError("need at least one point")
    if len(pts) < 3:
        return 0.0
    hull = _monotone_chain(pts)
    if len(hull) < 3:
        return 0.0
    x, y = hull[:, 0], hull[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _monotone_chain(pts: np.ndarray) -> np.ndarray:
    """Convex hull vertices in counter-clockwise order (Andrew's algorithm)."""
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    sorted_pts = [tuple(p) for p in pts[order]]
    # dedupe identical points, they break the turn test
    uniq = []
    for p in sorted_pts:
        if not uniq or p != uniq[-1]:
            uniq.append(p)
    if len(uniq) < 3:
        return np.asarray(uniq, dtype=np.float64).reshape(-1, 2)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.asarray(lower[:-1] + upper[:-1], dtype=np.float64)


@dataclass(frozen=True)
class Triangulation:
    triangles: tuple[tuple[int, int, int], ...]
    edges: frozenset[tuple[int, int]]


def delaunay(points) -> Triangulation:
    """Incremental (Bowyer-Watson) Delaunay triangulation of 2D points.

    Cocircular ties resolve by insertion order, which is ascending point
    index. Degenerate inputs (fewer than 3 points, or all collinear) raise.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = len(pts)
    if n < 3:
        raise ValueError("degenerate triangulation: need at least 3 points")

    box_lo = pts.min(axis=0)
    box_hi = pts.max(axis=0)
    diag = float(np.hypot(*(box_hi - box_lo)))
    if diag == 0.0:
        raise ValueError("degenerate triangulation: all points coincide")
    cx, cy = (box_lo + box_hi) / 2.0
    m = 10.0 * diag
    verts = np.vstack(
        [pts, [[cx - 2.0 * m, cy - m], [cx + 2.0 * m, cy - m], [cx, cy + 2.0 * m]]]
    )
    tris: list[tuple[int, int, int]] = [(n, n + 1, n + 2)]

    for p in range(n):
        tri_arr = np.asarray(tris, dtype=np.int64)
        bad = np.flatnonzero(_in_circumcircle(verts, tri_arr, verts[p]))
        if len(bad) == 0:
            # duplicate of an existing vertex or exactly cocircular; skip
            continue
        edge_count: dict[tuple[int, int], int] = {}
        for t in bad:
            a, b, c = tris[int(t)]
            for u, v in ((a, b), (b, c), (c, a)):
                e = (u, v) if u < v else (v, u)
                edge_count[e] = edge_count.get(e, 0) + 1
        keep = [tri for i, tri in enumerate(tris) if i not in set(int(t) for t in bad)]
        for (u, v), cnt in edge_count.items():
            if cnt == 1:
                keep.append((u, v, p))
        tris = keep

    final = [
        tuple(sorted(t)) for t in tris if max(t) < n
    ]
    if not final:
        raise ValueError("degenerate triangulation: points are collinear")
    final.sort()
    edges = set()
    for a, b, c in final:
        edges.update(((a, b), (b, c), (a, c)))
    return Triangulation(tuple(final), frozenset(edges))


def _in_circumcircle(verts: np.ndarray, tris: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Strictly-inside test for point p against every triangle's circumcircle."""
    a = verts[tris[:, 0]] - p
    b = verts[tris[:, 1]] - p
    c = verts[tris[:, 2]] - p
    a2 = a[:, 0] * a[:, 0] + a[:, 1] * a[:, 1]
    b2 = b[:, 0] * b[:, 0] + b[:, 1] * b[:, 1]
    c2 = c[:, 0] * c[:, 0] + c[:, 1] * c[:, 1]
    det = (
        a[:, 0] * (b[:, 1] * c2 - c[:, 1] * b2)
        - a[:, 1] * (b[:, 0] * c2 - c[:, 0] * b2)
        + a2 * (b[:, 0] * c[:, 1] - c[:, 0] * b[:, 1])
    )
    orient = (verts[tris[:, 1], 0] - verts[tris[:, 0], 0]) * (
        verts[tris[:, 2], 1] - verts[tris[:, 0], 1]
    ) - (verts[tris[:, 1], 1] - verts[tris[:, 0], 1]) * (
        verts[tris[:, 2], 0] - verts[tris[:, 0], 0]
    )
    return det * np.sign(orient) > 0


# ---------------------------------------------------------------------------
# The five metrics
# ---------------------------------------------------------------------------


def _check_node_sets(initial: LayoutInstance, final: LayoutInstance) -> None:
    if initial.ids != final.ids:
        raise ValueError("initial and final layouts have different node sets")


def oo_nni(initial: LayoutInstance, final: LayoutInstance) -> float:
    """Fraction of pair-axis orderings strictly inverted between layouts.

    Pairs tied on an axis in either layout contribute nothing; normalization
    is by both axes over all C(N, 2) pairs.
    """
    _check_node_sets(initial, final)
    n = initial.n
    if n < 2:
        return 0.0
    inv = 0
    for axis in (0, 1):
        u = initial.positions[:, axis]
        v = final.positions[:, axis]
        su = np.sign(u[:, None] - u[None, :])
        sv = np.sign(v[:, None] - v[None, :])
        inv += int(np.count_nonzero(np.triu(su * sv, 1) == -1))
    return inv / (2 * (n * (n - 1) // 2))


def sp_ch_a(initial: LayoutInstance, final: LayoutInstance) -> float:
    """Convex hull area of the final layout over that of the initial one."""
    _check_node_sets(initial, final)
    a0 = convex_hull_area(initial.positions)
    if a0 == 0.0:
        raise ValueError("initial layout has zero convex hull area")
    return convex_hull_area(final.positions) / a0


def gs_bb_iar(initial: LayoutInstance, final: LayoutInstance) -> float:
    """Bounding-box aspect-ratio change, folded so the optimum is 1."""
    _check_node_sets(initial, final)
    b0 = bounding_box(initial, include_sizes=False)
    b1 = bounding_box(final, include_sizes=False)
    if b0.width == 0 or b0.height == 0 or b1.width == 0 or b1.height == 0:
        raise ValueError("degenerate bounding box")
    r = (b1.width / b1.height) / (b0.width / b0.height)
    return max(r, 1.0 / r)


def nm_dm_imse(initial: LayoutInstance, final: LayoutInstance) -> float:
    """Mean squared node displacement after bounding-box alignment.

    The initial layout is translated and scaled per axis so its center-only
    bounding box matches the final one, then displacements are averaged; any
    pure axis-aligned scaling plus translation therefore scores 0.
    """
    _check_node_sets(initial, final)
    b0 = bounding_box(initial, include_sizes=False)
    if b0.width == 0 or b0.height == 0:
        raise ValueError("degenerate initial bounding box")
    b1 = bounding_box(final, include_sizes=False)
    if b1 == b0:
        aligned = initial.positions  # matching boxes: the alignment is identity
    else:
        scale = np.array([b1.width / b0.width, b1.height / b0.height])
        aligned = np.array(b1.center) + (initial.positions - np.array(b0.center)) * scale
    disp = final.positions - aligned
    return float(np.mean(disp[:, 0] ** 2 + disp[:, 1] ** 2))


def relative_std(values) -> float:
    """Population standard deviation over mean."""
    v = np.asarray(values, dtype=np.float64)
    return float(np.std(v) / np.mean(v))


def el_rsdd(initial: LayoutInstance, final: LayoutInstance) -> float:
    """Spread of length ratios along the initial layout's Delaunay edges.

    Each edge contributes final length over initial length; the result is the
    relative standard deviation of these ratios, so uniform scaling scores 0.
    """
    _check_node_sets(initial, final)
    if initial.n < 3:
        warnings.warn("el_rsdd needs at least 3 nodes; reporting 0", stacklevel=2)
        return 0.0
    tri = delaunay(initial.positions)
    idx = np.asarray(sorted(tri.edges), dtype=np.int64)
    d0 = np.linalg.norm(
        initial.positions[idx[:, 0]] - initial.positions[idx[:, 1]], axis=1
    )
    if np.any(d0 == 0):
        raise ValueError("zero-length edge in the initial Delaunay triangulation")
    d1 = np.linalg.norm(
        final.positions[idx[:, 0]] - final.positions[idx[:, 1]], axis=1
    )
    return relative_std(d1 / d0)


def evaluate(initial: LayoutInstance, final: LayoutInstance) -> MetricsReport:
    """Compute all five metrics."""
    return MetricsReport(
        oo_nni=oo_nni(initial, final),
        sp_ch_a=sp_ch_a(initial, final),
        gs_bb_iar=gs_bb_iar(initial, final),
        nm_dm_imse=nm_dm_imse(initial, final),
        el_rsdd=el_rsdd(initial, final),
    )
