"""
Enumerating every polygon of a wireframe
========================================

A wireframe is a planar graph.  Its cycle space is spanned by a
fundamental cycle basis, and every cycle is an XOR of basis cycles that
overlap along edges.
"""

# %%
# Build a 3 x 3 junction grid: 4 cells, 12 lines.
from wirepoly.enumeration import EnumerationLimits, LimitExceeded, enumerate_cycles, sample_polygons
from wirepoly.graph import Junction, LineSegment, Wireframe, build_graph, connected_subgraphs, cycle_basis
from wirepoly.scene import Label, PlaneAnnotation

n = 3
pts = [(0.1 + 0.4 * i, 0.1 + 0.4 * j) for j in range(n) for i in range(n)]
pairs = [(k, k + 1) for k in range(n * n) if k % n < n - 1]
pairs += [(k, k + n) for k in range(n * (n - 1))]
wf = Wireframe(
    [Junction(i, p) for i, p in enumerate(pts)],
    [LineSegment(i, e) for i, e in enumerate(pairs)],
)
graph = build_graph(wf)
(comp,) = connected_subgraphs(graph)
print(comp.n_vertices, "junctions,", comp.n_edges, "lines")

# %%
# The basis has E - V + 1 cycles.
basis = cycle_basis(comp)
print(len(basis), [sorted(c.edges) for c in basis])

# %%
# Combining basis cycles yields the 4 cells, 4 dominoes, 4 L-shapes
# and the outer square.  Combinations whose XOR is not one simple
# polygon are dropped.
cycles = enumerate_cycles(comp, wf.positions)
print(len(cycles), "polygons, by size:", [len(c) for c in cycles])

# %%
# Dense graphs explode combinatorially, so enumeration takes limits and
# raises instead of silently truncating.
try:
    enumerate_cycles(comp, wf.positions, EnumerationLimits(max_polygons=5))
except LimitExceeded as exc:
    print("limit hit:", exc)

# %%
# For training a classifier, polygons are sampled: random ones, positives
# that trace an annotated plane, and negatives far from every annotation.
cells = [c for c in cycles if len(c) == 4 and c.polygon(wf.positions).area < 0.2]
anns = [
    PlaneAnnotation.from_polygon(c.polygon(wf.positions), sorted(c.edges), Label.WALL)
    for c in cells
]
samples = sample_polygons(comp, wf.positions, anns, rng_seed=0, resolution=64)
print([label for _, label in samples])
