"""Shared test utilities: seeded random instances and small oracles."""

from __future__ import annotations

import math

import numpy as np

from forbid.model import LayoutInstance


def pass_budget(s_max: float, scale_step: float) -> int:
    """Upper bound on solver passes: the initial unscaled pass, one probe per
    interval halving, and one terminal probe."""
    if s_max - 1 > scale_step:
        probes = max(0, math.ceil(math.log2((s_max - 1) / scale_step)))
    else:
        probes = 0
    return 1 + probes + 1


def make_layout(
    seed: int,
    n: int,
    box_scale: float = 2.5,
    size_lo: float = 0.5,
    size_hi: float = 3.0,
) -> LayoutInstance:
    """Uniform centers in a box scaled with sqrt(n); log-uniform sizes."""
    rng = np.random.default_rng(seed)
    span = box_scale * np.sqrt(n)
    pos = rng.uniform(0.0, span, (n, 2))
    sizes = np.exp(rng.uniform(np.log(size_lo), np.log(size_hi), (n, 2)))
    return LayoutInstance([f"n{i}" for i in range(n)], pos, sizes)


def overlap_pairs_oracle(layout: LayoutInstance) -> set[tuple[int, int]]:
    """Plain double loop over the strict predicate; independent of the package
    vectorized paths."""
    pos, sizes = layout.positions, layout.sizes
    out = set()
    for i in range(layout.n):
        for j in range(i + 1, layout.n):
            if abs(pos[i, 0] - pos[j, 0]) < (sizes[i, 0] + sizes[j, 0]) / 2 and abs(
                pos[i, 1] - pos[j, 1]
            ) < (sizes[i, 1] + sizes[j, 1]) / 2:
                out.add((i, j))
    return out
