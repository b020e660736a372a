"""SVG rendering: one rectangle per node, red when overlapped, blue otherwise."""

from __future__ import annotations

from .model import LayoutInstance, OverlapSet, bounding_box

OVERLAP_FILL = "#d62728"
FREE_FILL = "#1f77b4"
EDGE_STROKE = "#999999"


def render_svg(layout: LayoutInstance, overlaps: OverlapSet) -> bytes:
    """Render to SVG 1.1; the viewBox fits all rectangles with a 2% margin.

    Edges draw first as grey segments so nodes sit on top. The y axis is
    flipped to keep the picture in conventional orientation.
    """
    box = bounding_box(layout, include_sizes=True)
    margin = 0.02 * max(box.width, box.height)
    vx = box.xmin - margin
    vy = -(box.ymax + margin)
    vw = box.width + 2 * margin
    vh = box.height + 2 * margin

    flagged = overlaps.node_indices()
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{vx:g} {vy:g} {vw:g} {vh:g}">',
    ]
    if layout.edges:
        parts.append(f'<g stroke="{EDGE_STROKE}" stroke-width="{0.005 * max(vw, vh):g}">')
        for a, b in layout.edges:
            i, j = layout.index_of(a), layout.index_of(b)
            x1, y1 = layout.positions[i]
            x2, y2 = layout.positions[j]
            parts.append(
                f'<line x1="{x1:g}" y1="{-y1:g}" x2="{x2:g}" y2="{-y2:g}"/>'
            )
        parts.append("</g>")
    for i in range(layout.n):
        cx, cy = layout.positions[i]
        w, h = layout.sizes[i]
        x = cx - w / 2
        y = -(cy + h / 2)
        if i in flagged:
            style = f'class="overlap" fill="{OVERLAP_FILL}" fill-opacity="0.5"'
        else:
            style = f'class="free" fill="{FREE_FILL}"'
        parts.append(
            f'<rect x="{x:g}" y="{y:g}" width="{w:g}" height="{h:g}" {style}/>'
        )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
