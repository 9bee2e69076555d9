"""Annotated room-layout scenes: a wireframe plus labelled plane polygons."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

from .geometry import Point2, Polygon, polygon_centroid
from .graph import Junction, LineSegment, Wireframe, WireframeError, build_graph, cycle_from_edges

__all__ = ["Label", "SEMANTIC_LABELS", "Plane", "PlaneAnnotation", "Scene", "scene_from_polygons"]


class Label(IntEnum):
    """Class index into a 4-vector of (background, wall, floor, ceiling) scores."""

    BACKGROUND = 0
    WALL = 1
    FLOOR = 2
    CEILING = 3

    @classmethod
    def parse(cls, value) -> "Label":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError:
                raise ValueError(f"unknown label {value!r}") from None
        return cls(int(value))

    @property
    def key(self) -> str:
        return self.name.lower()


SEMANTIC_LABELS = (Label.WALL, Label.FLOOR, Label.CEILING)


@dataclass(frozen=True)
class PlaneAnnotation:
    polygon: Polygon
    centroid: Point2
    line_ids: tuple[int, ...]
    label: Label

    def __post_init__(self):
        object.__setattr__(self, "line_ids", tuple(int(i) for i in self.line_ids))
        object.__setattr__(self, "label", Label.parse(self.label))
        object.__setattr__(self, "centroid", Point2(*map(float, self.centroid)))
        if not self.line_ids:
            raise ValueError("a plane annotation needs at least one line")
        c = polygon_centroid(self.polygon.vertices)
        if abs(c.x - self.centroid.x) > 1e-9 or abs(c.y - self.centroid.y) > 1e-9:
            raise ValueError("centroid does not match the polygon")

    @classmethod
    def from_polygon(cls, polygon: Polygon, line_ids, label) -> "PlaneAnnotation":
        return cls(polygon, polygon_centroid(polygon.vertices), tuple(line_ids), label)


@dataclass(frozen=True)
class Plane:
    id: int
    line_ids: tuple[int, ...]
    label: Label

    def __post_init__(self):
        object.__setattr__(self, "line_ids", tuple(int(i) for i in self.line_ids))
        object.__setattr__(self, "label", Label.parse(self.label))


@dataclass(frozen=True)
class Scene:
    """Junctions, lines and labelled planes of one image.

    Each plane is given by the ids of the lines bounding it; those lines
    must form one simple polygon.
    """

    junctions: tuple[Junction, ...] = ()
    lines: tuple[LineSegment, ...] = ()
    planes: tuple[Plane, ...] = ()

    def __post_init__(self):
        for name in ("junctions", "lines", "planes"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def wireframe(self) -> Wireframe:
        return Wireframe(self.junctions, self.lines)

    def validate(self) -> None:
        """Raise ``WireframeError`` / ``GeometryError`` if the scene is inconsistent."""
        for j in self.junctions:
            if not (0.0 <= j.position.x <= 1.0 and 0.0 <= j.position.y <= 1.0):
                raise WireframeError(f"junction {j.id} lies outside the unit square")
        graph = build_graph(self.wireframe)
        if graph.n_duplicates:
            raise WireframeError("scene contains duplicate line segments")
        ids = [p.id for p in self.planes]
        if len(set(ids)) != len(ids):
            raise WireframeError("duplicate plane ids")
        self.plane_annotations(graph)

    def plane_annotations(self, graph=None) -> list[PlaneAnnotation]:
        graph = graph or build_graph(self.wireframe)
        pos = self.wireframe.positions
        out = []
        for p in self.planes:
            unknown = [l for l in p.line_ids if l not in graph.edges]
            if unknown:
                raise WireframeError(f"plane {p.id} references unknown lines {unknown}")
            cyc = cycle_from_edges(graph, p.line_ids)
            if cyc is None or len(cyc.edges) != len(p.line_ids):
                raise WireframeError(f"lines of plane {p.id} do not form a single cycle")
            out.append(PlaneAnnotation.from_polygon(cyc.polygon(pos), p.line_ids, p.label))
        return out

    def labelled_polygons(self) -> list[tuple[Polygon, Label]]:
        return [(a.polygon, a.label) for a in self.plane_annotations()]

    def segments(self) -> list[tuple[Point2, Point2]]:
        return self.wireframe.segments()


def scene_from_polygons(polygons: Sequence[tuple[Sequence, object]], tol: float = 1e-12) -> Scene:
    """Build a scene from labelled vertex loops, sharing coincident vertices and edges."""
    junctions: list[Junction] = []
    lookup: dict[tuple[float, float], int] = {}
    lines: dict[tuple[int, int], int] = {}
    planes = []

    def jid(p):
        key = (round(float(p[0]) / tol) * tol, round(float(p[1]) / tol) * tol)
        if key not in lookup:
            lookup[key] = len(junctions)
            junctions.append(Junction(len(junctions), (float(p[0]), float(p[1]))))
        return lookup[key]

    for pid, (verts, label) in enumerate(polygons):
        ids = [jid(p) for p in verts]
        lids = []
        for a, b in zip(ids, ids[1:] + ids[:1]):
            key = (min(a, b), max(a, b))
            if key not in lines:
                lines[key] = len(lines)
            lids.append(lines[key])
        planes.append(Plane(pid, tuple(lids), label))
    segs = [LineSegment(lid, uv) for uv, lid in sorted(lines.items(), key=lambda kv: kv[1])]
    return Scene(tuple(junctions), tuple(segs), tuple(planes))

