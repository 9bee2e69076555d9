import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wirepoly.geometry import (
    GeometryError,
    Polygon,
    polygon_area,
    polygon_centroid,
    polygon_iou,
    polygon_is_simple,
    polygon_perimeter,
    rasterize,
    segments_intersect,
)

UNIT = [(0, 0), (1, 0), (1, 1), (0, 1)]
TRI = [(0, 0), (1, 0), (0, 1)]


def test_simple_square():
    assert polygon_is_simple(UNIT)


def test_bowtie_not_simple():
    assert not polygon_is_simple([(0, 0), (1, 1), (1, 0), (0, 1)])


@pytest.mark.parametrize(
    "verts",
    [
        [(0, 0)],
        [(0, 0), (1, 0)],
        [(0, 0), (1, 0), (2, 0)],  # zero area
        [(0, 0), (1, 0), (1, 1), (1, 0)],  # repeated vertex
        [(0, 0), (2, 0), (1, 0), (1, 1)],  # adjacent edges fold back
        [(0, 0), (1, 0), (1, 1), (0.5, 0), (0, 1)],  # vertex touches an edge
        [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0.5), (0.5, 0.5), (0, 0.5)],
        "garbage",
        [],
    ],
)
def test_not_simple(verts):
    assert not polygon_is_simple(verts)


def test_straight_vertex_allowed():
    # a vertex in the middle of a straight edge
    assert polygon_is_simple([(0, 0), (0.5, 0), (1, 0), (1, 1), (0, 1)])


def test_collinear_overlap_rejected():
    # two non-adjacent edges on the same line, overlapping
    verts = [(0, 0), (3, 0), (3, 1), (2, 1), (2, 0.0), (1, 0.0), (1, 1), (0, 1)]
    assert not polygon_is_simple(verts)


def test_segments_intersect_cases():
    assert segments_intersect((0, 0), (1, 1), (0, 1), (1, 0))
    assert segments_intersect((0, 0), (1, 0), (1, 0), (2, 0))  # touching endpoints
    assert segments_intersect((0, 0), (2, 0), (1, 0), (3, 0))  # collinear overlap
    assert not segments_intersect((0, 0), (1, 0), (2, 0), (3, 0))
    assert not segments_intersect((0, 0), (1, 0), (0, 1), (1, 1))


def test_area_examples():
    assert polygon_area(UNIT) == 1.0
    assert polygon_area(TRI) == 0.5
    assert polygon_area([(0.5 * x, 0.5 * y) for x, y in UNIT]) == 0.25


def test_area_rejects_non_simple():
    with pytest.raises(GeometryError):
        polygon_area([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_centroid_examples():
    assert polygon_centroid(UNIT) == pytest.approx((0.5, 0.5), abs=1e-15)
    assert polygon_centroid(TRI) == pytest.approx((1 / 3, 1 / 3), abs=1e-15)
    shifted = [(x + 0.2, y + 0.1) for x, y in UNIT]
    assert polygon_centroid(shifted) == pytest.approx((0.7, 0.6), abs=1e-15)


def test_centroid_is_area_weighted():
    # vertex mean would be pulled towards the dense right side
    verts = [(0, 0), (1, 0), (1, 0.25), (1, 0.5), (1, 0.75), (1, 1), (0, 1)]
    assert polygon_centroid(verts) == pytest.approx((0.5, 0.5))


def test_centroid_zero_area():
    with pytest.raises(GeometryError):
        polygon_centroid([(0, 0), (1, 0), (2, 0)])


def test_polygon_type_validates():
    with pytest.raises(GeometryError):
        Polygon(((0, 0), (1, 1), (1, 0), (0, 1)))
    with pytest.raises(GeometryError):
        Polygon(((0, 0), (1.5, 0), (1, 1)))
    with pytest.raises(GeometryError):
        Polygon(((0, 0), (1, 0), (1, 1)), vertex_ids=(1, 2))
    p = Polygon(((0, 0), (1, 0), (1, 1)), vertex_ids=(4, 5, 6))
    assert p.area == 0.5 and len(p) == 3


def test_rasterize_unit_square():
    assert rasterize(UNIT, 2).bits.all()


def _center_oracle(verts, R):
    """Point-in-polygon on each pixel center, boundary inclusive, by hand."""
    out = np.zeros((R, R), bool)
    n = len(verts)
    for j in range(R):
        for i in range(R):
            px, py = (i + 0.5) / R, (j + 0.5) / R
            inside = False
            on_edge = False
            for k in range(n):
                (ax, ay), (bx, by) = verts[k], verts[(k + 1) % n]
                cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
                if abs(cross) < 1e-12 and min(ax, bx) - 1e-12 <= px <= max(ax, bx) + 1e-12 and min(
                    ay, by
                ) - 1e-12 <= py <= max(ay, by) + 1e-12:
                    on_edge = True
                if (ay > py) != (by > py):
                    xin = ax + (py - ay) * (bx - ax) / (by - ay)
                    if px < xin:
                        inside = not inside
            out[j, i] = inside or on_edge
    return out


def test_rasterize_half_plane_triangle():
    # centers (0.25, 0.25) and (0.75, 0.75) lie on the diagonal and count as
    # inside; (0.75, 0.25) is strictly inside; (0.25, 0.75) is outside
    tri = [(0, 0), (1, 0), (1, 1)]
    mask = rasterize(tri, 2)
    assert np.array_equal(mask.bits, _center_oracle(tri, 2))
    assert mask.count == 3
    assert not mask.bits[1, 0]


@pytest.mark.parametrize(
    "verts",
    [
        [(0.1, 0.1), (0.9, 0.2), (0.5, 0.9)],
        [(0.1, 0.1), (0.9, 0.1), (0.9, 0.9), (0.5, 0.4), (0.1, 0.9)],
        [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        [(0.125, 0.125), (0.625, 0.125), (0.625, 0.375), (0.125, 0.375)],
    ],
)
@pytest.mark.parametrize("R", [4, 8, 13])
def test_rasterize_matches_center_oracle(verts, R):
    assert np.array_equal(rasterize(verts, R).bits, _center_oracle(verts, R))


def test_rasterize_bad_resolution():
    with pytest.raises(GeometryError):
        rasterize(UNIT, 0)


def test_raster_area_converges():
    verts = [(0.2, 0.1), (0.9, 0.3), (0.6, 0.5), (0.4, 0.95)]
    area = polygon_area(verts)
    assert abs(rasterize(verts, 1024).count / 1024**2 - area) < 1e-2


def test_iou_examples():
    sq = [(0.1, 0.1), (0.5, 0.1), (0.5, 0.5), (0.1, 0.5)]
    assert polygon_iou(sq, sq, 256) == 1.0
    far = [(0.6, 0.6), (0.9, 0.6), (0.9, 0.9)]
    assert polygon_iou(sq, far, 256) == 0.0
    half = [(x + 0.2, y) for x, y in sq]
    assert abs(polygon_iou(sq, half, 1024) - 1 / 3) < 5e-3


coord = st.floats(0.0, 1.0, allow_nan=False)
polys = st.lists(st.tuples(coord, coord), min_size=3, max_size=7)


@settings(max_examples=150, deadline=None)
@given(polys, st.integers(0, 6), st.booleans())
def test_simplicity_invariant_to_rotation_and_reversal(verts, shift, rev):
    other = verts[shift % len(verts):] + verts[: shift % len(verts)]
    if rev:
        other = other[::-1]
    assert polygon_is_simple(verts) == polygon_is_simple(other)


@settings(max_examples=100, deadline=None)
@given(polys, st.integers(0, 6), st.floats(0.2, 1.0))
def test_area_invariances(verts, shift, s):
    if not polygon_is_simple(verts):
        return
    a = polygon_area(verts)
    rot = verts[shift % len(verts):] + verts[: shift % len(verts)]
    assert polygon_area(rot) == pytest.approx(a, rel=1e-9, abs=1e-12)
    assert polygon_area(rot[::-1]) == pytest.approx(a, rel=1e-9, abs=1e-12)
    moved = [(x + 3.0, y - 2.0) for x, y in verts]
    assert polygon_area(moved) == pytest.approx(a, rel=1e-6, abs=1e-9)
    scaled = [(s * x, s * y) for x, y in verts]
    if polygon_is_simple(scaled):
        assert polygon_area(scaled) == pytest.approx(s * s * a, rel=1e-9, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(polys, st.sampled_from([16, 64, 128]))
def test_raster_area_bound(verts, R):
    if not polygon_is_simple(verts):
        return
    area = polygon_area(verts)
    err = abs(rasterize(verts, R).count / R**2 - area)
    assert err <= 4 * polygon_perimeter(verts) / R


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_iou_symmetric_and_reflexive(a, b):
    if not (polygon_is_simple(a) and polygon_is_simple(b)):
        return
    assert polygon_iou(a, b, 64) == polygon_iou(b, a, 64)
    if rasterize(a, 64).count:
        assert polygon_iou(a, a, 64) == 1.0
