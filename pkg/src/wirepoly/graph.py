"""
=================
Wireframe graphs
=================

Junctions become vertices and line segments become edges of a simple
undirected graph.  Vertices are identified by junction id and every edge
carries the id of the line it came from.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .geometry import Point2, Polygon

__all__ = [
    "WireframeError",
    "JunctionKind",
    "Junction",
    "LineSegment",
    "Wireframe",
    "PlaneGraph",
    "Cycle",
    "build_graph",
    "connected_subgraphs",
    "cycle_basis",
    "cycle_from_edges",
]


class WireframeError(ValueError):
    """Broken referential integrity or degenerate segments."""


class JunctionKind(str, Enum):
    PROPER = "proper"
    FALSE = "false"


@dataclass(frozen=True)
class Junction:
    id: int
    position: Point2
    kind: JunctionKind = JunctionKind.PROPER

    def __post_init__(self):
        object.__setattr__(self, "position", Point2(*map(float, self.position)))
        object.__setattr__(self, "kind", JunctionKind(self.kind))


@dataclass(frozen=True)
class LineSegment:
    id: int
    endpoints: tuple[int, int]

    def __post_init__(self):
        u, v = self.endpoints
        object.__setattr__(self, "endpoints", (int(u), int(v)))


@dataclass(frozen=True)
class Wireframe:
    junctions: tuple[Junction, ...] = ()
    lines: tuple[LineSegment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "junctions", tuple(self.junctions))
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def positions(self) -> dict[int, Point2]:
        return {j.id: j.position for j in self.junctions}

    def segment(self, line: LineSegment) -> tuple[Point2, Point2]:
        pos = self.positions
        return pos[line.endpoints[0]], pos[line.endpoints[1]]

    def segments(self) -> list[tuple[Point2, Point2]]:
        pos = self.positions
        return [(pos[l.endpoints[0]], pos[l.endpoints[1]]) for l in self.lines]


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    """Simple undirected graph over junction ids with line ids on edges.

    ``adj[u][v]`` is the id of the line joining ``u`` and ``v``.
    ``n_duplicates`` counts segments dropped as parallel duplicates while
    building the graph.
    """

    adj: Mapping[int, Mapping[int, int]]
    n_duplicates: int = 0
    _edges: dict[int, tuple[int, int]] = field(init=False, repr=False)

    def __post_init__(self):
        edges = {}
        for u, nbrs in self.adj.items():
            for v, lid in nbrs.items():
                if u < v:
                    edges[lid] = (u, v)
        object.__setattr__(self, "_edges", dict(sorted(edges.items())))

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    @property
    def edges(self) -> dict[int, tuple[int, int]]:
        """Line id -> ``(u, v)`` with ``u < v``, ordered by line id."""
        return self._edges

    @property
    def n_vertices(self) -> int:
        return len(self.adj)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def neighbors(self, u: int) -> list[int]:
        return sorted(self.adj[u])

    def edge_id(self, u: int, v: int) -> int:
        return self.adj[u][v]

    def subgraph(self, vertices: Iterable[int]) -> "PlaneGraph":
        keep = set(vertices)
        return PlaneGraph(
            {u: {v: l for v, l in self.adj[u].items() if v in keep} for u in sorted(keep)}
        )

    def edge_subgraph(self, line_ids: Iterable[int]) -> "PlaneGraph":
        adj: dict[int, dict[int, int]] = {}
        for lid in line_ids:
            u, v = self._edges[lid]
            adj.setdefault(u, {})[v] = lid
            adj.setdefault(v, {})[u] = lid
        return PlaneGraph(adj)

    def to_segments(self) -> list[LineSegment]:
        return [LineSegment(lid, uv) for lid, uv in self._edges.items()]


@dataclass(frozen=True)
class Cycle:
    """A simple cycle: its line ids and the vertex order they induce."""

    edges: frozenset[int]
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.edges)

    def polygon(self, positions: Mapping[int, Point2]) -> Polygon:
        return Polygon(tuple(positions[v] for v in self.vertices), self.vertices)


def build_graph(wireframe: Wireframe) -> PlaneGraph:
    """Build the junction/line graph of a wireframe.

    Duplicate segments (same unordered endpoint pair) are collapsed onto
    the lowest line id and counted in ``n_duplicates``.

    Raises
    ------
    WireframeError
        On a segment referencing an unknown junction, a self-loop, or
        repeated junction / line ids.
    """
    adj: dict[int, dict[int, int]] = {}
    for j in wireframe.junctions:
        if j.id in adj:
            raise WireframeError(f"duplicate junction id {j.id}")
        adj[j.id] = {}
    seen_ids = set()
    dups = 0
    for line in sorted(wireframe.lines, key=lambda l: l.id):
        if line.id in seen_ids:
            raise WireframeError(f"duplicate line id {line.id}")
        seen_ids.add(line.id)
        u, v = line.endpoints
        for end in (u, v):
            if end not in adj:
                raise WireframeError(f"line {line.id} references unknown junction {end}")
        if u == v:
            raise WireframeError(f"line {line.id} is a self-loop on junction {u}")
        if v in adj[u]:
            dups += 1
            continue
        adj[u][v] = line.id
        adj[v][u] = line.id
    return PlaneGraph(adj, n_duplicates=dups)


def connected_subgraphs(graph: PlaneGraph) -> list[PlaneGraph]:
    """Maximal connected components, ordered by their smallest vertex id."""
    seen: set[int] = set()
    out = []
    for root in graph.vertices:
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in graph.adj[u]:
                if v not in comp:
                    comp.add(v)
                    queue.append(v)
        seen |= comp
        out.append(graph.subgraph(comp))
    return out


def cycle_from_edges(graph: PlaneGraph, line_ids: Iterable[int]) -> Cycle | None:
    """Interpret an edge set as a single simple cycle.

    Returns None unless every touched vertex has degree two and the edges
    form one connected loop.  The vertex order starts at the smallest
    vertex and proceeds towards its smaller neighbour.
    """
    edges = frozenset(line_ids)
    if len(edges) < 3:
        return None
    nbrs: dict[int, list[int]] = {}
    for lid in edges:
        u, v = graph.edges[lid]
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(len(n) != 2 for n in nbrs.values()):
        return None
    start = min(nbrs)
    order = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(order) != len(nbrs):
        return None
    return Cycle(edges, tuple(order))


def cycle_basis(component: PlaneGraph, root: int | None = None) -> list[Cycle]:
    """Fundamental cycle basis of a connected graph.

    A BFS spanning tree is grown from ``root`` (default: the smallest
    vertex id), visiting neighbours in ascending id order.  Each non-tree
    edge closes exactly one basis cycle, so the basis has
    ``E - V + 1`` members, listed in ascending order of that edge's id.
    """
    if component.n_vertices == 0:
        return []
    if root is None:
        root = component.vertices[0]
    parent = {root: None}
    depth = {root: 0}
    queue = deque([root])
    tree_edges = set()
    while queue:
        u = queue.popleft()
        for v in component.neighbors(u):
            if v not in parent:
                parent[v] = u
                depth[v] = depth[u] + 1
                tree_edges.add(component.adj[u][v])
                queue.append(v)

    basis = []
    for lid, (u, v) in component.edges.items():
        if lid in tree_edges:
            continue
        path = {lid}
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                path.add(component.adj[a][parent[a]])
                a = parent[a]
            else:
                path.add(component.adj[b][parent[b]])
                b = parent[b]
        cyc = cycle_from_edges(component, path)
        if cyc is None:  # pragma: no cover - a tree path plus one edge is a cycle
            raise WireframeError("fundamental cycle construction failed")
        basis.append(cyc)
    return basis
