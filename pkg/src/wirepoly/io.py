"""
JSON file formats.

Scene files::

    {"junctions": [{"id": 0, "x": 0.1, "y": 0.2, "kind": "proper"}, ...],
     "lines": [{"id": 0, "j1": 0, "j2": 1}, ...],
     "planes": [{"id": 0, "line_ids": [0, 1, 2], "label": "wall"}, ...]}

Detection files::

    {"detections": [{"polygon": [[x, y], ...], "scores": [b, w, f, c]}, ...]}

Score files (per-anchor line scores for proposal generation)::

    {"anchors": [{"id": 0, "scores": {"<line id>": 0.93, ...}}, ...]}

Polygon files (enumeration output) and proposal files hold lists of
polygons with their junction and line ids.  Everything is UTF-8 JSON; floats
are written with ``repr`` precision so files round-trip exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Sequence

from .evaluation import EvalReport, ScoredDetection
from .geometry import GeometryError, Polygon
from .graph import Junction, JunctionKind, LineSegment, Wireframe, WireframeError
from .optimizer import Proposal
from .scene import Label, Plane, Scene

__all__ = [
    "InputError",
    "read_json",
    "write_json",
    "dumps",
    "scene_from_dict",
    "scene_to_dict",
    "load_scene",
    "save_scene",
    "detections_from_dict",
    "detections_to_dict",
    "load_detections",
    "save_detections",
    "scores_from_dict",
    "scores_to_dict",
    "load_scores",
    "proposals_to_dict",
    "polygons_to_dict",
    "load_report",
    "save_report",
]


class InputError(ValueError):
    """Malformed input file; the message names the offending field."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _field(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if key not in obj:
        raise InputError(f"{where}.{key}: missing field")
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise InputError(f"{where}.{key}: expected an integer, got {val!r}")
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
            raise InputError(f"{where}.{key}: expected a finite number, got {val!r}")
        val = float(val)
    if kind is list and not isinstance(val, list):
        raise InputError(f"{where}.{key}: expected a list")
    return val


def scene_from_dict(d: dict, validate: bool = True) -> Scene:
    if not isinstance(d, dict):
        raise InputError("scene: expected a JSON object")
    junctions, lines, planes = [], [], []
    for i, j in enumerate(_field(d, "junctions", "scene", list)):
        where = f"junctions[{i}]"
        x = _field(j, "x", where, float)
        y = _field(j, "y", where, float)
        if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
            raise InputError(f"{where}: coordinates ({x}, {y}) outside [0, 1]")
        kind = j.get("kind", "proper")
        try:
            kind = JunctionKind(kind)
        except ValueError:
            raise InputError(f"{where}.kind: unknown junction kind {kind!r}") from None
        junctions.append(Junction(_field(j, "id", where, int), (x, y), kind))
    for i, l in enumerate(_field(d, "lines", "scene", list)):
        where = f"lines[{i}]"
        lines.append(
            LineSegment(_field(l, "id", where, int), (_field(l, "j1", where, int), _field(l, "j2", where, int)))
        )
    for i, p in enumerate(d.get("planes", [])):
        where = f"planes[{i}]"
        ids = _field(p, "line_ids", where, list)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in ids):
            raise InputError(f"{where}.line_ids: expected a list of integers")
        label = _field(p, "label", where)
        try:
            label = Label.parse(label)
        except ValueError:
            raise InputError(f"{where}.label: unknown label {label!r}") from None
        if label == Label.BACKGROUND:
            raise InputError(f"{where}.label: planes must be wall, floor or ceiling")
        planes.append(Plane(_field(p, "id", where, int), tuple(ids), label))
    scene = Scene(tuple(junctions), tuple(lines), tuple(planes))
    if validate:
        try:
            scene.validate()
        except (WireframeError, GeometryError) as exc:
            raise InputError(f"scene: {exc}") from exc
    return scene


def scene_to_dict(scene: Scene | Wireframe, include_planes: bool = True) -> dict:
    out = {
        "junctions": [
            {"id": j.id, "x": j.position.x, "y": j.position.y, "kind": j.kind.value}
            for j in scene.junctions
        ],
        "lines": [{"id": l.id, "j1": l.endpoints[0], "j2": l.endpoints[1]} for l in scene.lines],
    }
    if include_planes and isinstance(scene, Scene):
        out["planes"] = [
            {"id": p.id, "line_ids": list(p.line_ids), "label": p.label.key} for p in scene.planes
        ]
    return out


def load_scene(path, validate: bool = True) -> Scene:
    try:
        return scene_from_dict(read_json(path), validate)
    except InputError as exc:
        if str(exc).startswith(str(path)):
            raise
        raise InputError(f"{path}: {exc}") from exc


def save_scene(path, scene, include_planes: bool = True) -> None:
    write_json(path, scene_to_dict(scene, include_planes))


def detections_from_dict(d: dict) -> list[ScoredDetection]:
    out = []
    for i, det in enumerate(_field(d, "detections", "detections file", list)):
        where = f"detections[{i}]"
        verts = _field(det, "polygon", where, list)
        scores = _field(det, "scores", where, list)
        try:
            poly = Polygon(tuple((float(x), float(y)) for x, y in verts))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{where}.polygon: {exc}") from exc
        try:
            out.append(ScoredDetection(poly, tuple(float(s) for s in scores)))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{where}.scores: {exc}") from exc
    return out


def detections_to_dict(dets: Sequence[ScoredDetection]) -> dict:
    return {
        "detections": [
            {"polygon": [[v.x, v.y] for v in d.polygon.vertices], "scores": list(d.scores)}
            for d in dets
        ]
    }


def load_detections(path) -> list[ScoredDetection]:
    try:
        return detections_from_dict(read_json(path))
    except InputError as exc:
        if str(exc).startswith(str(path)):
            raise
        raise InputError(f"{path}: {exc}") from exc


def save_detections(path, dets) -> None:
    write_json(path, detections_to_dict(dets))


def scores_from_dict(d: dict) -> list[dict[int, float]]:
    """Per-anchor ``{line id: score}`` maps, ordered by anchor id."""
    anchors = []
    for i, a in enumerate(_field(d, "anchors", "scores file", list)):
        where = f"anchors[{i}]"
        k = _field(a, "id", where, int)
        raw = _field(a, "scores", where)
        if not isinstance(raw, dict):
            raise InputError(f"{where}.scores: expected an object")
        scores = {}
        for key, val in raw.items():
            try:
                lid = int(key)
            except ValueError:
                raise InputError(f"{where}.scores: line id {key!r} is not an integer") from None
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not 0 <= val <= 1:
                raise InputError(f"{where}.scores[{key}]: expected a number in [0, 1]")
            scores[lid] = float(val)
        anchors.append((k, scores))
    ids = [k for k, _ in anchors]
    if len(set(ids)) != len(ids):
        raise InputError("anchors: duplicate anchor ids")
    return [s for _, s in sorted(anchors)]


def scores_to_dict(per_anchor: Sequence[dict[int, float]]) -> dict:
    return {
        "anchors": [
            {"id": k, "scores": {str(l): s for l, s in sorted(sc.items())}}
            for k, sc in enumerate(per_anchor)
        ]
    }


def load_scores(path) -> list[dict[int, float]]:
    try:
        return scores_from_dict(read_json(path))
    except InputError as exc:
        if str(exc).startswith(str(path)):
            raise
        raise InputError(f"{path}: {exc}") from exc


def _poly_entry(poly: Polygon, line_ids=None) -> dict:
    out = {"vertices": [[v.x, v.y] for v in poly.vertices]}
    if poly.vertex_ids is not None:
        out["vertex_ids"] = list(poly.vertex_ids)
    if line_ids is not None:
        out["line_ids"] = sorted(line_ids)
    return out


def polygons_to_dict(cycles_and_polys) -> dict:
    """``cycles_and_polys``: iterable of ``(Cycle, Polygon)`` pairs."""
    return {"polygons": [_poly_entry(p, c.edges) for c, p in cycles_and_polys]}


def proposals_to_dict(proposals: Sequence[Proposal | None]) -> dict:
    out = []
    for k, p in enumerate(proposals):
        if p is None:
            out.append(None)
            continue
        entry = {"anchor": k, **_poly_entry(p.polygon, p.cycle.edges), "avg_weight": p.avg_weight}
        out.append(entry)
    return {"proposals": out}


def load_report(path) -> EvalReport:
    return EvalReport.from_dict(read_json(path))


def save_report(path, report: EvalReport) -> None:
    write_json(path, report.to_dict())
