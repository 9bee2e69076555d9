"""
==================
2D polygon geometry
==================

Points live in normalized image coordinates, ``[0, 1] x [0, 1]`` with the
origin at the top-left corner and ``y`` pointing down.  Rasterization uses a
square ``R x R`` pixel grid over that unit square; pixel ``(i, j)`` has its
center at ``((i + 0.5) / R, (j + 0.5) / R)`` and is stored at ``mask[j, i]``
(row = y, column = x) so masks can be viewed directly as images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

__all__ = [
    "EPS",
    "DEFAULT_RESOLUTION",
    "GeometryError",
    "Point2",
    "Polygon",
    "PixelMask",
    "polygon_is_simple",
    "signed_area",
    "polygon_area",
    "polygon_centroid",
    "polygon_perimeter",
    "rasterize",
    "polygon_iou",
    "mask_iou",
    "segments_intersect",
]

EPS = 1e-12
DEFAULT_RESOLUTION = 512


class GeometryError(ValueError):
    """Raised for degenerate or non-simple polygon input."""


class Point2(NamedTuple):
    x: float
    y: float


def _as_array(vertices) -> np.ndarray:
    arr = np.asarray(vertices, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        if arr.size == 0:
            return arr.reshape(0, 2)
        raise GeometryError(f"expected an (n, 2) vertex array, got shape {arr.shape}")
    return arr


def _orient(ax, ay, bx, by, cx, cy) -> int:
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if d > EPS:
        return 1
    if d < -EPS:
        return -1
    return 0


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    # assumes p collinear with ab
    return (
        min(ax, bx) - EPS <= px <= max(ax, bx) + EPS
        and min(ay, by) - EPS <= py <= max(ay, by) + EPS
    )


def segments_intersect(a, b, c, d) -> bool:
    """True if closed segments ``ab`` and ``cd`` share at least one point.

    Collinear overlap and endpoint touching both count as intersection.
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    dx, dy = d
    o1 = _orient(ax, ay, bx, by, cx, cy)
    o2 = _orient(ax, ay, bx, by, dx, dy)
    o3 = _orient(cx, cy, dx, dy, ax, ay)
    o4 = _orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and _on_segment(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and _on_segment(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and _on_segment(cx, cy, dx, dy, bx, by):
        return True
    return False


def signed_area(vertices) -> float:
    """Shoelace signed area; positive for counter-clockwise in a y-up frame."""
    arr = _as_array(vertices)
    if len(arr) < 3:
        return 0.0
    x, y = arr[:, 0], arr[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def polygon_is_simple(vertices) -> bool:
    """Return True if the closed vertex loop is a simple polygon.

    A simple polygon has at least three distinct vertices, nonzero area,
    and no boundary self-intersection: non-adjacent edges are disjoint and
    adjacent edges meet only at their shared vertex.  Straight (180 degree)
    vertices are allowed.  Malformed input yields False rather than raising.

    Examples
    --------
    >>> polygon_is_simple([(0, 0), (1, 0), (1, 1), (0, 1)])
    True
    >>> polygon_is_simple([(0, 0), (1, 1), (1, 0), (0, 1)])
    False
    """
    try:
        arr = _as_array(vertices)
    except (GeometryError, ValueError, TypeError):
        return False
    n = len(arr)
    if n < 3 or not np.all(np.isfinite(arr)):
        return False
    pts = [tuple(p) for p in arr.tolist()]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(pts[i][0] - pts[j][0]) <= EPS and abs(pts[i][1] - pts[j][1]) <= EPS:
                return False
    if abs(signed_area(arr)) <= EPS:
        return False

    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        # adjacent edge (b, c): fold-back happens iff c lies on ab or a on bc
        c = edges[(i + 1) % n][1]
        if _orient(*a, *b, *c) == 0:
            if _on_segment(*a, *b, *c) or _on_segment(*b, *c, *a):
                return False
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(a, b, *edges[j]):
                return False
    return True


def polygon_area(vertices) -> float:
    """Absolute shoelace area of a simple polygon."""
    if not polygon_is_simple(vertices):
        raise GeometryError("polygon_area requires a simple polygon")
    return abs(signed_area(vertices))


def polygon_perimeter(vertices) -> float:
    arr = _as_array(vertices)
    return float(np.sum(np.hypot(*(np.roll(arr, -1, axis=0) - arr).T)))


def polygon_centroid(vertices) -> Point2:
    """Area-weighted centroid of a polygon.

    Raises
    ------
    GeometryError
        If the polygon has (numerically) zero area.
    """
    arr = _as_array(vertices)
    a = signed_area(arr)
    if abs(a) <= EPS:
        raise GeometryError("centroid of a zero-area polygon is undefined")
    # shift to the first vertex to limit cancellation
    origin = arr[0]
    p = arr - origin
    q = np.roll(p, -1, axis=0)
    cross = p[:, 0] * q[:, 1] - q[:, 0] * p[:, 1]
    cx = float(np.sum((p[:, 0] + q[:, 0]) * cross)) / (6.0 * a)
    cy = float(np.sum((p[:, 1] + q[:, 1]) * cross)) / (6.0 * a)
    return Point2(cx + float(origin[0]), cy + float(origin[1]))


@dataclass(frozen=True)
class Polygon:
    """Ordered, simple, closed polygon in normalized coordinates.

    The first vertex is not repeated at the end.  ``vertex_ids`` optionally
    records the wireframe junction behind each vertex.
    """

    vertices: tuple[Point2, ...]
    vertex_ids: tuple[int, ...] | None = None
    _area: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(Point2(float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.vertex_ids is not None:
            ids = tuple(int(i) for i in self.vertex_ids)
            if len(ids) != len(verts):
                raise GeometryError("vertex_ids must match vertices in length")
            object.__setattr__(self, "vertex_ids", ids)
        for x, y in verts:
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise GeometryError(f"vertex ({x}, {y}) outside the unit square")
        if not polygon_is_simple(verts):
            raise GeometryError("polygon is not simple")
        object.__setattr__(self, "_area", abs(signed_area(verts)))

    def __len__(self):
        return len(self.vertices)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @property
    def area(self) -> float:
        return self._area

    @property
    def centroid(self) -> Point2:
        return polygon_centroid(self.vertices)


@dataclass(frozen=True, eq=False)
class PixelMask:
    """Boolean ``R x R`` occupancy grid; ``bits[j, i]`` is pixel ``(i, j)``."""

    resolution: int
    bits: np.ndarray

    def __post_init__(self):
        if self.bits.shape != (self.resolution, self.resolution):
            raise GeometryError("mask shape does not match its resolution")

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other):
        if not isinstance(other, PixelMask):
            return NotImplemented
        return self.resolution == other.resolution and np.array_equal(self.bits, other.bits)

    __hash__ = None


def _fill_mask(arr: np.ndarray, R: int) -> np.ndarray:
    centers = (np.arange(R) + 0.5) / R
    x0, y0 = arr[:, 0], arr[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)

    # even-odd interior: crossings of each row's center line, half-open in y
    toggles = np.zeros((R, R + 1), dtype=np.int32)
    cy = centers[:, None]
    lo, hi = np.minimum(y0, y1), np.maximum(y0, y1)
    crosses = (lo <= cy) & (cy < hi) & (hi > lo)
    rows, edges = np.nonzero(crosses)
    if len(rows):
        t = (centers[rows] - y0[edges]) / (y1[edges] - y0[edges])
        xs = x0[edges] + t * (x1[edges] - x0[edges])
        # first column whose center lies strictly right of the crossing
        first = np.floor(xs * R - 0.5).astype(np.int64) + 1
        first = np.clip(first, 0, R)
        np.add.at(toggles, (rows, first), 1)
    inside = (np.cumsum(toggles, axis=1)[:, :R] % 2).astype(bool)

    # pixel centers lying exactly on the boundary count as inside
    for k in range(len(arr)):
        ax, ay, bx, by = x0[k], y0[k], x1[k], y1[k]
        if abs(by - ay) <= EPS:
            r = np.nonzero(np.abs(centers - ay) <= EPS)[0]
            if len(r):
                c = np.nonzero(
                    (centers >= min(ax, bx) - EPS) & (centers <= max(ax, bx) + EPS)
                )[0]
                inside[np.ix_(r, c)] = True
            continue
        r = np.nonzero((centers >= min(ay, by) - EPS) & (centers <= max(ay, by) + EPS))[0]
        if not len(r):
            continue
        xs = ax + (centers[r] - ay) * (bx - ax) / (by - ay)
        c = np.rint(xs * R - 0.5).astype(np.int64)
        ok = (c >= 0) & (c < R)
        ok &= np.abs((c + 0.5) / R - xs) <= EPS
        inside[r[ok], c[ok]] = True
    return inside


def rasterize(polygon, resolution: int = DEFAULT_RESOLUTION) -> PixelMask:
    """Rasterize a polygon onto an ``R x R`` grid over the unit square.

    A pixel is set iff its center is inside the polygon under the even-odd
    rule; centers exactly on the boundary are inside.

    Parameters
    ----------
    polygon : Polygon or (n, 2) array_like
    resolution : int
        Grid size ``R``; must be at least 1.
    """
    if int(resolution) != resolution or resolution < 1:
        raise GeometryError(f"resolution must be a positive integer, got {resolution!r}")
    R = int(resolution)
    verts = polygon.vertices if isinstance(polygon, Polygon) else polygon
    arr = _as_array(verts)
    if len(arr) < 3:
        raise GeometryError("cannot rasterize fewer than three vertices")
    return PixelMask(R, _fill_mask(arr, R))


def mask_iou(a: PixelMask, b: PixelMask) -> float:
    if a.resolution != b.resolution:
        raise GeometryError("masks have different resolutions")
    union = np.count_nonzero(a.bits | b.bits)
    if union == 0:
        return 0.0
    return np.count_nonzero(a.bits & b.bits) / union


def polygon_iou(a, b, resolution: int = DEFAULT_RESOLUTION) -> float:
    """Pixel IoU of two polygons rasterized at the same resolution."""
    return mask_iou(rasterize(a, resolution), rasterize(b, resolution))
