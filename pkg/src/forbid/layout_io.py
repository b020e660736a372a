"""Layout file parsing/serialization and trace CSV export.

Native format:
    {"nodes": [{"id": str, "x": num, "y": num, "w": num, "h": num}, ...],
     "edges": [[idA, idB], ...]}        # edges optional

Unknown JSON fields are ignored. A best-effort importer for the agora dataset
JSON shape is available via format="agora".
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import LayoutError
from .model import LayoutInstance
from .sgd import ConvergenceTrace

TRACE_HEADER = "pass,iteration,stress,overlaps,scale,total_movement"

_REQUIRED_NODE_FIELDS = ("id", "x", "y", "w", "h")


def parse_layout(data: bytes | str) -> LayoutInstance:
    """Parse the native JSON layout format."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as err:
            raise LayoutError(f"layout file is not UTF-8: {err}") from err
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as err:
        raise LayoutError(f"malformed JSON: {err}") from err
    if not isinstance(doc, dict) or "nodes" not in doc:
        raise LayoutError("layout document must be an object with a 'nodes' list")
    raw_nodes = doc["nodes"]
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise LayoutError("'nodes' must be a non-empty list")

    ids: list[str] = []
    pos = np.empty((len(raw_nodes), 2), dtype=np.float64)
    sizes = np.empty((len(raw_nodes), 2), dtype=np.float64)
    for i, node in enumerate(raw_nodes):
        if not isinstance(node, dict):
            raise LayoutError(f"node {i}: expected an object")
        for key in _REQUIRED_NODE_FIELDS:
            if key not in node:
                raise LayoutError(f"node {i}: missing field {key!r}")
        node_id = str(node["id"])
        try:
            x, y = float(node["x"]), float(node["y"])
            w, h = float(node["w"]), float(node["h"])
        except (TypeError, ValueError) as err:
            raise LayoutError(f"node {node_id!r}: non-numeric coordinate: {err}") from err
        if not (w > 0 and h > 0):
            raise LayoutError(f"node {node_id!r}: width and height must be > 0")
        ids.append(node_id)
        pos[i] = (x, y)
        sizes[i] = (w, h)

    edges = []
    for j, edge in enumerate(doc.get("edges", []) or []):
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise LayoutError(f"edge {j}: expected a pair of node ids")
        edges.append((str(edge[0]), str(edge[1])))

    return LayoutInstance(ids, pos, sizes, edges)


def parse_agora(data: bytes | str) -> LayoutInstance:
    """Best-effort import of the agora dataset JSON shape.

    Accepts nodes keyed by id/index/name with x/y positions and
    width/height (or w/h) sizes; edges as pairs or {source, target} objects.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as err:
        raise LayoutError(f"malformed JSON: {err}") from err
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise LayoutError("unrecognized agora document: expected a 'nodes' list")

    nodes = []
    for i, node in enumerate(doc["nodes"]):
        if not isinstance(node, dict):
            raise LayoutError(f"agora node {i}: expected an object")
        node_id = node.get("id", node.get("index", node.get("name", i)))
        x, y = node.get("x"), node.get("y")
        w = node.get("width", node.get("w"))
        h = node.get("height", node.get("h"))
        if x is None or y is None or w is None or h is None:
            raise LayoutError(
                f"agora node {node_id!r}: could not map position/size fields "
                "(need x, y and width/height)"
            )
        nodes.append((str(node_id), float(x), float(y), float(w), float(h)))

    edges = []
    for j, edge in enumerate(doc.get("edges", []) or []):
        if isinstance(edge, dict) and "source" in edge and "target" in edge:
            edges.append((str(edge["source"]), str(edge["target"])))
        elif isinstance(edge, (list, tuple)) and len(edge) == 2:
            edges.append((str(edge[0]), str(edge[1])))
        else:
            raise LayoutError(f"agora edge {j}: unrecognized shape")

    return LayoutInstance(
        [n[0] for n in nodes],
        np.array([(n[1], n[2]) for n in nodes], dtype=np.float64).reshape(-1, 2),
        np.array([(n[3], n[4]) for n in nodes], dtype=np.float64).reshape(-1, 2),
        edges,
    )


def load_layout(path: str | Path, fmt: str = "native") -> LayoutInstance:
    raw = Path(path).read_bytes()
    if fmt == "native":
        return parse_layout(raw)
    if fmt == "agora":
        return parse_agora(raw)
    raise ValueError(f"unknown layout format {fmt!r}")


def serialize_layout(layout: LayoutInstance) -> bytes:
    """Canonical JSON bytes; parse(serialize(x)) == x on the data model."""
    doc = {
        "nodes": [
            {
                "id": layout.ids[i],
                "x": float(layout.positions[i, 0]),
                "y": float(layout.positions[i, 1]),
                "w": float(layout.sizes[i, 0]),
                "h": float(layout.sizes[i, 1]),
            }
            for i in range(layout.n)
        ],
        "edges": [list(e) for e in layout.edges],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def write_trace_csv(trace: ConvergenceTrace) -> bytes:
    lines = [TRACE_HEADER]
    for r in trace:
        lines.append(
            f"{r.pass_index},{r.iteration_index},{r.stress!r},"
            f"{r.overlap_count},{r.scale!r},{r.total_movement!r}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
