"""
=====================================
Approximate minimum-average cycles
=====================================

Exact minimum mean cycle algorithms (Karp) happily return a two-edge
"cycle" that walks one cheap edge back and forth.  Instead, each edge is
tried as a seed, in order of increasing weight: the edge is removed, the
cheapest path between its endpoints is found with Dijkstra, and the path
plus the seed edge is a candidate polygon.  The best candidate by mean
edge weight among those that are valid polygons is kept.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .geometry import Point2, Polygon, polygon_is_simple
from .graph import Cycle, PlaneGraph, Wireframe, build_graph, connected_subgraphs, cycle_from_edges

__all__ = [
    "WeightedGraph",
    "ProposalConfig",
    "Proposal",
    "shortest_path",
    "iter_min_avg_weight",
    "min_avg_weight_polygon",
    "propose_polygon",
    "propose_all",
]


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    graph: PlaneGraph
    weights: Mapping[int, float]

    def __post_init__(self):
        for lid in self.graph.edges:
            w = self.weights.get(lid)
            if w is None or not math.isfinite(w):
                raise ValueError(f"edge {lid} needs a finite weight")


@dataclass(frozen=True)
class ProposalConfig:
    kappa: float = 0.5
    iterations: int | None = None

    def __post_init__(self):
        if not 0.0 < self.kappa < 1.0:
            raise ValueError(f"kappa must lie in (0, 1), got {self.kappa}")
        if self.iterations is not None and self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass(frozen=True)
class Proposal:
    polygon: Polygon
    avg_weight: float
    cycle: Cycle


def shortest_path(
    wg: WeightedGraph, source: int, target: int, skip_edge: int | None = None
) -> list[int] | None:
    """Line ids of the cheapest ``source -> target`` path, or None.

    Ties in total weight go to the path with fewer edges, then to the
    lower vertex id popped first.
    """
    adj = wg.graph.adj
    w = wg.weights
    best = {source: (0.0, 0)}
    pred: dict[int, tuple[int, int]] = {}
    heap = [(0.0, 0, source)]
    done = set()
    while heap:
        d, h, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            break
        for v in sorted(adj[u]):
            lid = adj[u][v]
            if lid == skip_edge or v in done:
                continue
            cand = (d + w[lid], h + 1)
            if v not in best or cand < best[v]:
                best[v] = cand
                pred[v] = (u, lid)
                heapq.heappush(heap, (cand[0], cand[1], v))
    if target not in done:
        return None
    path = []
    v = target
    while v != source:
        u, lid = pred[v]
        path.append(lid)
        v = u
    path.reverse()
    return path


def iter_min_avg_weight(
    wg: WeightedGraph, positions: Mapping[int, Point2], T: int | None = None
) -> Iterator[tuple[Proposal | None, Proposal | None]]:
    """Run the greedy search one seed edge at a time.

    Yields ``(candidate, best)`` after each iteration, where ``candidate`` is
    this iteration's closed cycle (None if no path closes it or it is not a
    valid polygon) and ``best`` the best proposal so far.
    """
    g = wg.graph
    w = wg.weights
    order = sorted(g.edges, key=lambda lid: (w[lid], lid))
    if T is None:
        T = len(order)
    best: Proposal | None = None
    best_w = math.inf
    for lid in order[:T]:
        u, v = g.edges[lid]
        path = shortest_path(wg, u, v, skip_edge=lid)
        cand = None
        if path is not None:
            edges = path + [lid]
            cyc = cycle_from_edges(g, edges)
            if cyc is not None and len(cyc) >= 3:
                verts = [positions[x] for x in cyc.vertices]
                if polygon_is_simple(verts):
                    avg = math.fsum(w[e] for e in edges) / len(edges)
                    cand = Proposal(Polygon(verts, cyc.vertices), avg, cyc)
                    if avg < best_w:
                        best, best_w = cand, avg
        yield cand, best


def min_avg_weight_polygon(
    wg: WeightedGraph, positions: Mapping[int, Point2], T: int | None = None
) -> Proposal | None:
    """Approximate lowest average-weight polygon of a weighted graph.

    Parameters
    ----------
    wg : WeightedGraph
    positions : mapping
        Junction id to normalized position, used to reject candidates that
        are not simple polygons.
    T : int, optional
        Number of seed edges to try (default: all edges).

    Returns
    -------
    Proposal or None
        None when no valid polygon turned up within ``T`` iterations.
    """
    if T is not None and T < 1:
        raise ValueError("T must be >= 1")
    best = None
    for _, best in iter_min_avg_weight(wg, positions, T):
        pass
    return best


def propose_polygon(
    wireframe: Wireframe,
    line_scores: Mapping[int, float],
    config: ProposalConfig | None = None,
) -> Proposal | None:
    """Turn per-line scores for one plane anchor into a polygon proposal.

    Lines scoring above ``config.kappa`` form a graph with edge weights
    ``1 - score``; the lowest average-weight polygon over its connected
    components is returned.
    """
    config = config or ProposalConfig()
    missing = [l.id for l in wireframe.lines if l.id not in line_scores]
    if missing:
        raise KeyError(f"no score for lines {missing}")
    kept = Wireframe(
        wireframe.junctions,
        [l for l in wireframe.lines if line_scores[l.id] > config.kappa],
    )
    graph = build_graph(kept)
    if graph.n_edges == 0:
        return None
    T = config.iterations if config.iterations is not None else graph.n_edges
    weights = {lid: 1.0 - float(line_scores[lid]) for lid in graph.edges}
    positions = wireframe.positions
    best = None
    for comp in connected_subgraphs(graph):
        if comp.n_edges < 3:
            continue
        cand = min_avg_weight_polygon(WeightedGraph(comp, weights), positions, T)
        if cand is not None and (best is None or cand.avg_weight < best.avg_weight):
            best = cand
    return best


def propose_all(
    wireframe: Wireframe,
    per_anchor_scores: Sequence[Mapping[int, float]] | Mapping[int, Mapping[int, float]],
    config: ProposalConfig | None = None,
) -> list[Proposal | None]:
    """One proposal (or None) per anchor, in anchor order."""
    if isinstance(per_anchor_scores, Mapping):
        per_anchor_scores = [per_anchor_scores[k] for k in sorted(per_anchor_scores)]
    return [propose_polygon(wireframe, s, config) for s in per_anchor_scores]
