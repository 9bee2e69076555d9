"""
Structured3D perspective layouts to scene files.

Only the layout planes are read.  The expected input is the per-view
``layout.json`` of a perspective rendering::

    {"junctions": [{"ID": 0, "coordinate": [x_px, y_px]}, ...],
     "planes": [{"ID": 0, "type": "wall", "visible_mask": [[0, 1, 2, 3], ...]}, ...]}

Each ``visible_mask`` entry is a polygon given as junction ids.  Pixel
coordinates are divided by the image size (1280 x 720 by default).
Polygons that are not simple after normalization are skipped with a
warning, as are plane types other than wall/floor/ceiling.
"""

from __future__ import annotations

import logging
from typing import Any

from .geometry import polygon_is_simple
from .scene import Label, Scene, scene_from_polygons

__all__ = ["convert_structured3d"]

log = logging.getLogger(__name__)

_TYPES = {"wall": Label.WALL, "floor": Label.FLOOR, "ceiling": Label.CEILING}


def convert_structured3d(
    layout: dict[str, Any],
    width: int = 1280,
    height: int = 720,
    clip_tol: float = 0.01,
) -> tuple[Scene, list[str]]:
    """Convert one perspective layout annotation.

    Parameters
    ----------
    layout : dict
        Parsed ``layout.json``.
    width, height : int
        Image size in pixels.
    clip_tol : float
        Normalized coordinates within this distance outside the unit square
        are clamped onto it; polygons reaching further out are skipped.

    Returns
    -------
    scene : Scene
    warnings : list of str
        One message per skipped plane polygon.
    """
    coords = {}
    for j in layout.get("junctions", []):
        x, y = j["coordinate"][:2]
        coords[j["ID"]] = (float(x) / width, float(y) / height)

    polys = []
    warnings = []
    for plane in layout.get("planes", []):
        label = _TYPES.get(str(plane.get("type", "")).lower())
        pid = plane.get("ID")
        if label is None:
            warnings.append(f"plane {pid}: unsupported type {plane.get('type')!r}")
            continue
        for mask in plane.get("visible_mask", []):
            try:
                verts = [coords[i] for i in mask]
            except KeyError as exc:
                warnings.append(f"plane {pid}: unknown junction {exc.args[0]}")
                continue
            if any(
                x < -clip_tol or x > 1 + clip_tol or y < -clip_tol or y > 1 + clip_tol
                for x, y in verts
            ):
                warnings.append(f"plane {pid}: polygon leaves the image")
                continue
            verts = [(min(max(x, 0.0), 1.0), min(max(y, 0.0), 1.0)) for x, y in verts]
            if not polygon_is_simple(verts):
                warnings.append(f"plane {pid}: polygon is not simple, skipped")
                continue
            polys.append((verts, label))
    for w in warnings:
        log.warning(w)
    return scene_from_polygons(polys), warnings
