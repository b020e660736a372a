"""Layout data model: node boxes, overlap predicate, bounding boxes, scaling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CoincidentCentersError, LayoutError


@dataclass(frozen=True)
class NodeBox:
    """Axis-aligned rectangle of size (width, height) centered at ``center``."""

    id: str
    center: tuple[float, float]
    width: float
    height: float

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise LayoutError(
                f"node {self.id!r}: width and height must be > 0, "
                f"got ({self.width}, {self.height})"
            )


def overlaps(a: NodeBox, b: NodeBox) -> bool:
    """Strict rectangle overlap: tangent boxes (edge or corner) do not overlap."""
    return abs(a.center[0] - b.center[0]) < (a.width + b.width) / 2 and abs(
        a.center[1] - b.center[1]
    ) < (a.height + b.height) / 2


@dataclass(frozen=True)
class BoundingBox:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def center(self) -> tuple[float, float]:
        return ((self.xmin + self.xmax) / 2, (self.ymin + self.ymax) / 2)


class LayoutInstance:
    """Immutable layout: node ids, centers (N, 2), sizes (N, 2), optional edges.

    Positions and sizes are float64 arrays marked read-only; all transforms
    return new instances.
    """

    __slots__ = ("ids", "positions", "sizes", "edges", "_index")

    def __init__(
        self,
        ids: Sequence[str],
        positions: np.ndarray,
        sizes: np.ndarray,
        edges: Iterable[tuple[str, str]] = (),
    ) -> None:
        ids = tuple(str(i) for i in ids)
        if len(ids) < 1:
            raise LayoutError("layout needs at least one node")
        positions = np.array(positions, dtype=np.float64)
        sizes = np.array(sizes, dtype=np.float64)
        if positions.shape != (len(ids), 2) or sizes.shape != (len(ids), 2):
            raise LayoutError(
                f"expected (N, 2) position and size arrays for N={len(ids)}, "
                f"got {positions.shape} and {sizes.shape}"
            )
        if not np.all(np.isfinite(positions)):
            raise LayoutError("node positions must be finite")
        if not np.all(sizes > 0) or not np.all(np.isfinite(sizes)):
            bad = int(np.argmin((sizes > 0).all(axis=1)))
            raise LayoutError(f"node {ids[bad]!r}: width and height must be > 0")
        index = {}
        for i, node_id in enumerate(ids):
            if node_id in index:
                raise LayoutError(f"duplicate id {node_id!r}")
            index[node_id] = i
        edges = tuple((str(a), str(b)) for a, b in edges)
        for a, b in edges:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise LayoutError(f"edge [{a!r}, {b!r}]: unknown node id {missing!r}")
        positions.setflags(write=False)
        sizes.setflags(write=False)
        self.ids = ids
        self.positions = positions
        self.sizes = sizes
        self.edges = edges
        self._index = index

    @classmethod
    def from_nodes(
        cls, nodes: Sequence[NodeBox], edges: Iterable[tuple[str, str]] = ()
    ) -> "LayoutInstance":
        return cls(
            [n.id for n in nodes],
            np.array([n.center for n in nodes], dtype=np.float64).reshape(-1, 2),
            np.array([(n.width, n.height) for n in nodes], dtype=np.float64).reshape(
                -1, 2
            ),
            edges,
        )

    @property
    def n(self) -> int:
        return len(self.ids)

    def node(self, i: int) -> NodeBox:
        return NodeBox(
            self.ids[i],
            (float(self.positions[i, 0]), float(self.positions[i, 1])),
            float(self.sizes[i, 0]),
            float(self.sizes[i, 1]),
        )

    @property
    def nodes(self) -> list[NodeBox]:
        return [self.node(i) for i in range(self.n)]

    def index_of(self, node_id: str) -> int:
        return self._index[node_id]

    def with_positions(self, positions: np.ndarray) -> "LayoutInstance":
        return LayoutInstance(self.ids, positions, self.sizes, self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LayoutInstance):
            return NotImplemented
        return (
            self.ids == other.ids
            and self.edges == other.edges
            and np.array_equal(self.positions, other.positions)
            and np.array_equal(self.sizes, other.sizes)
        )

    def __repr__(self) -> str:
        return f"LayoutInstance(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class OverlapSet:
    """Unordered overlapping index pairs, each stored as (i, j) with i < j."""

    pairs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "OverlapSet":
        return cls(frozenset((min(i, j), max(i, j)) for i, j in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return (min(i, j), max(i, j)) in self.pairs

    def node_indices(self) -> frozenset[int]:
        return frozenset(i for pair in self.pairs for i in pair)


def bounding_box(layout: LayoutInstance, include_sizes: bool = False) -> BoundingBox:
    """Min/max box over centers, or over rectangle corners if ``include_sizes``."""
    pos = layout.positions
    if include_sizes:
        half = layout.sizes / 2
        lo = (pos - half).min(axis=0)
        hi = (pos + half).max(axis=0)
    else:
        lo = pos.min(axis=0)
        hi = pos.max(axis=0)
    return BoundingBox(float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))


def scale_about(
    layout: LayoutInstance, factor: float, origin: tuple[float, float]
) -> LayoutInstance:
    """Scale centers about ``origin`` by ``factor``; sizes are untouched."""
    if not factor > 0:
        raise ValueError(f"scale factor must be > 0, got {factor}")
    o = np.asarray(origin, dtype=np.float64)
    return layout.with_positions(o + factor * (layout.positions - o))


def min_overlap_free_scale(layout: LayoutInstance) -> float:
    """Smallest uniform upscale factor that removes every overlap.

    For each overlapping pair the separating factor is the smaller of the two
    per-axis ratios (half-size sum over center gap, +inf on a zero gap); the
    result is the max over pairs, clamped to >= 1. Scaling by any s >= the
    returned value yields zero strict overlaps; rounding can leave the exact
    ratio one ulp short of tangency, so the result is nudged up until the
    scaled layout verifies clean.
    """
    n = layout.n
    if n < 2:
        return 1.0
    pos, sizes = layout.positions, layout.sizes
    pi, pj = np.triu_indices(n, 1)
    dx = np.abs(pos[pi, 0] - pos[pj, 0])
    dy = np.abs(pos[pi, 1] - pos[pj, 1])
    hw = (sizes[pi, 0] + sizes[pj, 0]) * 0.5
    hh = (sizes[pi, 1] + sizes[pj, 1]) * 0.5
    ovl = (dx < hw) & (dy < hh)
    if not ovl.any():
        return 1.0
    coincident = ovl & (dx == 0) & (dy == 0)
    if coincident.any():
        k = int(np.flatnonzero(coincident)[0])
        raise CoincidentCentersError(
            f"coincident centers: nodes {layout.ids[pi[k]]!r} and "
            f"{layout.ids[pj[k]]!r} overlap with zero center distance"
        )
    with np.errstate(divide="ignore"):
        ratio = np.minimum(hw / dx, hh / dy)
    scale = max(1.0, float(ratio[ovl].max()))

    ox, oy = bounding_box(layout).center
    bump = 5e-16
    for _ in range(60):
        sx = ox + scale * (pos[pi, 0] - ox) - (ox + scale * (pos[pj, 0] - ox))
        sy = oy + scale * (pos[pi, 1] - oy) - (oy + scale * (pos[pj, 1] - oy))
        if not ((np.abs(sx) < hw) & (np.abs(sy) < hh)).any():
            return scale
        scale *= 1.0 + bump
        bump *= 2.0
    raise CoincidentCentersError(
        "could not separate all pairs by uniform scaling; centers nearly coincide"
    )
