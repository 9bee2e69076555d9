"""
Polygons, rasters and IoU
=========================

Everything downstream works on simple polygons in normalized image
coordinates, rasterized at pixel centers.
"""

# %%
# A polygon is simple when its boundary never touches itself.  The bowtie
# below crosses at its center.
from wirepoly.geometry import (
    Polygon,
    polygon_area,
    polygon_centroid,
    polygon_is_simple,
    polygon_iou,
    rasterize,
)

square = [(0.1, 0.1), (0.5, 0.1), (0.5, 0.5), (0.1, 0.5)]
bowtie = [(0.1, 0.1), (0.5, 0.5), (0.5, 0.1), (0.1, 0.5)]
print(polygon_is_simple(square), polygon_is_simple(bowtie))

# %%
# Area and centroid come from the shoelace formula; the centroid is area
# weighted, not the mean of the vertices.
print(polygon_area(square), polygon_centroid(square))

# %%
# ``Polygon`` validates on construction, so code receiving one can rely on
# it being simple and inside the unit square.
p = Polygon(tuple(square))
print(p.area, p.centroid)

# %%
# Rasterizing marks each pixel whose center is inside (or on the edge of)
# the polygon.  Rows are image rows, so ``bits[y, x]``.
mask = rasterize(square, 10)
print(mask.bits.astype(int))

# %%
# IoU is measured on these masks.  Shifting the square by half its width
# leaves a third of the union in common.
shifted = [(x + 0.2, y) for x, y in square]
for R in (16, 128, 1024):
    print(R, polygon_iou(square, shifted, R))
