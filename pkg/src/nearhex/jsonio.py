"""JSON interchange for geometries and verification reports.

A geometry document is::

    {"name": ..., "points": [{"id": 0, "label": "12"}, ...], "lines": [[0,9,14], ...]}

with lines sorted lexicographically and each line ascending, which is how
:class:`~nearhex.geometry.Geometry` stores them; exports are therefore
byte-deterministic.
"""

from __future__ import annotations

import json
from typing import Any

from .geometry import Geometry, GeometryError


def render_label(label: Any) -> str:
    return str(label)


def geometry_to_document(g: Geometry, name: str) -> dict:
    labels = g.labels or tuple(str(i) for i in range(g.point_count))
    return {
        "name": name,
        "points": [
            {"id": i, "label": render_label(label)} for i, label in enumerate(labels)
        ],
        "lines": [list(line) for line in g.lines],
    }


def document_to_geometry(doc: Any) -> tuple[str, Geometry]:
    if not isinstance(doc, dict):
        raise GeometryError("geometry document must be a JSON object")
    try:
        name = doc["name"]
        points = doc["points"]
        lines = doc["lines"]
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"geometry document missing field: {exc}") from exc
    if not isinstance(points, list) or not isinstance(lines, list):
        raise GeometryError("'points' and 'lines' must be arrays")
    ids = []
    labels = []
    for entry in points:
        if not isinstance(entry, dict) or "id" not in entry:
            raise GeometryError(f"bad point entry: {entry!r}")
        ids.append(entry["id"])
        labels.append(str(entry.get("label", entry["id"])))
    if ids != list(range(len(ids))):
        raise GeometryError("point ids must be 0..n-1 in order")
    for line in lines:
        if not isinstance(line, list) or not all(isinstance(p, int) for p in line):
            raise GeometryError(f"bad line entry: {line!r}")
    return str(name), Geometry(len(ids), tuple(tuple(l) for l in lines), tuple(labels))


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_geometry(path: str) -> tuple[str, Geometry]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise GeometryError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GeometryError(f"{path} is not valid JSON: {exc}") from exc
    return document_to_geometry(doc)
