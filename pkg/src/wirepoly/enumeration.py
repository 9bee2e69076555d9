"""
=====================
Polygon enumeration
=====================

Every simple cycle of a graph is the XOR (symmetric difference) of a
unique subset of any cycle basis.  Enumerating basis subsets therefore
reaches every cycle; subsets whose members do not overlap on edges can
never XOR into a single cycle and are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .geometry import DEFAULT_RESOLUTION, Point2, Polygon, polygon_is_simple, polygon_iou
from .graph import Cycle, PlaneGraph, cycle_basis, cycle_from_edges

__all__ = [
    "EnumerationLimits",
    "LimitExceeded",
    "xor_compose",
    "iter_candidate_cycles",
    "enumerate_polygons",
    "enumerate_cycles",
    "sample_polygons",
    "POSITIVE",
    "NEGATIVE",
]

POSITIVE = "positive"
NEGATIVE = "negative"


class LimitExceeded(RuntimeError):
    """Enumeration outgrew its limits; no partial result is returned."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


@dataclass(frozen=True)
class EnumerationLimits:
    max_polygons: int = 10000
    max_basis_subset_size: int = 12

    def __post_init__(self):
        if self.max_polygons < 1 or self.max_basis_subset_size < 1:
            raise ValueError("enumeration limits must be >= 1")


def xor_compose(a: Iterable[int], b: Iterable[int]) -> frozenset[int]:
    """Symmetric difference of two edge sets."""
    return frozenset(a) ^ frozenset(b)


def _overlap_graph(basis: Sequence[Cycle]) -> list[set[int]]:
    nbrs = [set() for _ in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if basis[i].edges & basis[j].edges:
                nbrs[i].add(j)
                nbrs[j].add(i)
    return nbrs


def _connected_subsets(basis, nbrs, max_size) -> Iterator[tuple[tuple[int, ...], frozenset]]:
    # ESU-style enumeration: each connected vertex set of the overlap graph
    # is produced exactly once, anchored at its smallest member.
    def extend(sub, xor, ext, anchor, closed):
        yield sub, xor
        ext = sorted(ext, reverse=True)
        if ext and len(sub) >= max_size:
            raise LimitExceeded(
                f"a connected basis subset larger than {max_size} cycles exists",
                count=len(sub) + 1,
            )
        while ext:
            w = ext.pop()
            fresh = {u for u in nbrs[w] if u > anchor and u not in closed}
            yield from extend(
                sub + (w,),
                xor ^ basis[w].edges,
                set(ext) | fresh,
                anchor,
                closed | fresh | {w},
            )

    for v in range(len(basis)):
        ext = {u for u in nbrs[v] if u > v}
        yield from extend((v,), basis[v].edges, ext, v, nbrs[v] | {v})


def iter_candidate_cycles(
    component: PlaneGraph,
    limits: EnumerationLimits | None = None,
    root: int | None = None,
) -> Iterator[Cycle]:
    """Yield every single-cycle XOR of an edge-connected basis subset."""
    limits = limits or EnumerationLimits()
    basis = cycle_basis(component, root=root)
    nbrs = _overlap_graph(basis)
    for _, xor in _connected_subsets(basis, nbrs, limits.max_basis_subset_size):
        cyc = cycle_from_edges(component, xor)
        if cyc is not None:
            yield cyc


def enumerate_cycles(
    component: PlaneGraph,
    positions: Mapping[int, Point2],
    limits: EnumerationLimits | None = None,
    root: int | None = None,
) -> list[Cycle]:
    """All cycles of ``component`` that are simple polygons at ``positions``.

    Results are sorted by edge count, then by sorted line ids.

    Raises
    ------
    LimitExceeded
        When more than ``limits.max_polygons`` polygons are found or the
        basis admits a connected subset above ``max_basis_subset_size``.
    """
    limits = limits or EnumerationLimits()
    found: dict[frozenset, Cycle] = {}
    for cyc in iter_candidate_cycles(component, limits, root):
        if cyc.edges in found:
            continue
        if not polygon_is_simple([positions[v] for v in cyc.vertices]):
            continue
        found[cyc.edges] = cyc
        if len(found) > limits.max_polygons:
            raise LimitExceeded(
                f"more than {limits.max_polygons} polygons in one component",
                count=len(found),
            )
    return sorted(found.values(), key=lambda c: (len(c.edges), sorted(c.edges)))


def enumerate_polygons(
    component: PlaneGraph,
    positions: Mapping[int, Point2],
    limits: EnumerationLimits | None = None,
    root: int | None = None,
) -> list[Polygon]:
    """Enumerate all valid polygons of a connected wireframe component.

    Parameters
    ----------
    component : PlaneGraph
        A connected graph, e.g. one entry of ``connected_subgraphs``.
    positions : mapping
        Junction id to normalized position.
    limits : EnumerationLimits, optional
    root : int, optional
        Spanning-tree root for the internal cycle basis.  The output does
        not depend on it.

    Returns
    -------
    list of Polygon
        Deduplicated by edge set, in the order of ``enumerate_cycles``.
    """
    return [c.polygon(positions) for c in enumerate_cycles(component, positions, limits, root)]


def _random_connected_subset(rng, nbrs, size):
    start = int(rng.integers(len(nbrs)))
    sub = [start]
    frontier = set(nbrs[start])
    while len(sub) < size and frontier:
        nxt = sorted(frontier)[int(rng.integers(len(frontier)))]
        sub.append(nxt)
        frontier |= nbrs[nxt]
        frontier -= set(sub)
    return sub


def sample_polygons(
    component: PlaneGraph,
    positions: Mapping[int, Point2],
    annotations: Sequence,
    rng_seed: int,
    n_random: int = 20,
    n_positive: int = 10,
    n_negative: int = 10,
    negative_iou: float = 0.5,
    resolution: int = DEFAULT_RESOLUTION,
    max_attempts: int = 2000,
) -> list[tuple[Polygon, str]]:
    """Draw a training batch of polygons from a wireframe component.

    The batch holds up to ``n_random`` valid polygons from random
    edge-connected basis subsets, up to ``n_positive`` annotated plane
    polygons, and up to ``n_negative`` valid polygons whose IoU with every
    annotation is below ``negative_iou``.  Fewer are returned when the
    graph cannot supply them.  A random sample is labelled positive only if
    it traces exactly an annotated polygon.
    """
    rng = np.random.default_rng(rng_seed)
    basis = cycle_basis(component)
    nbrs = _overlap_graph(basis)
    ann_polys = [a.polygon for a in annotations]

    def label_of(poly):
        if any(_same_polygon(poly, ap) for ap in ann_polys):
            return POSITIVE
        return NEGATIVE

    def is_negative(poly):
        return all(polygon_iou(poly, ap, resolution) < negative_iou for ap in ann_polys)

    def draw():
        size = int(rng.integers(1, len(basis) + 1))
        sub = _random_connected_subset(rng, nbrs, size)
        xor = frozenset()
        for i in sub:
            xor ^= basis[i].edges
        cyc = cycle_from_edges(component, xor)
        if cyc is None:
            return None
        verts = [positions[v] for v in cyc.vertices]
        if not polygon_is_simple(verts):
            return None
        return cyc

    out: list[tuple[Polygon, str]] = []
    if basis:
        seen = set()
        for _ in range(max_attempts):
            if len(seen) >= n_random:
                break
            cyc = draw()
            if cyc is None or cyc.edges in seen:
                continue
            seen.add(cyc.edges)
            poly = cyc.polygon(positions)
            out.append((poly, label_of(poly)))

    order = rng.permutation(len(ann_polys))[:n_positive]
    out.extend((ann_polys[i], POSITIVE) for i in sorted(order))

    if basis:
        seen_neg = set()
        for _ in range(max_attempts):
            if len(seen_neg) >= n_negative:
                break
            cyc = draw()
            if cyc is None or cyc.edges in seen_neg:
                continue
            poly = cyc.polygon(positions)
            if is_negative(poly):
                seen_neg.add(cyc.edges)
                out.append((poly, NEGATIVE))
    return out


def _same_polygon(a: Polygon, b: Polygon) -> bool:
    if len(a) != len(b):
        return False
    pa = np.round(a.array, 12)
    pb = np.round(b.array, 12)
    n = len(pa)
    for rev in (pb, pb[::-1]):
        for s in range(n):
            if np.array_equal(pa, np.roll(rev, s, axis=0)):
                return True
    return False
