"""Brute-force reference implementations used only by the tests.

Nothing here calls into the code paths under test except the geometric
simplicity predicate, which the enumeration contract itself is defined by.
"""

import itertools
import math

import numpy as np
from scipy.spatial import Delaunay

from wirepoly.geometry import polygon_is_simple
from wirepoly.graph import Junction, LineSegment, Wireframe


def simple_cycles(edges):
    """All simple cycles (length >= 3) of an undirected simple graph.

    ``edges`` maps line id -> (u, v).  Returns a set of frozensets of line
    ids, one per cycle, found by DFS over vertex sequences anchored at
    their smallest vertex.
    """
    adj = {}
    for lid, (u, v) in edges.items():
        adj.setdefault(u, {})[v] = lid
        adj.setdefault(v, {})[u] = lid
    found = set()

    def dfs(start, path, used):
        u = path[-1]
        for v, lid in adj[u].items():
            if v == start and len(path) >= 3:
                found.add(frozenset(used | {lid}))
            elif v > start and v not in path:
                dfs(start, path + [v], used | {lid})

    for s in sorted(adj):
        dfs(s, [s], frozenset())
    return found


def cycle_vertex_order(edges, cycle):
    adj = {}
    for lid in cycle:
        u, v = edges[lid]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(adj)
    order = [start]
    prev, cur = start, adj[start][0]
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return order


def valid_polygon_cycles(edges, positions):
    out = set()
    for cyc in simple_cycles(edges):
        verts = [positions[v] for v in cycle_vertex_order(edges, cyc)]
        if polygon_is_simple(verts):
            out.add(cyc)
    return out


def brute_force_assignment(cost):
    """Minimum total cost over all maximal injective assignments."""
    cost = np.asarray(cost, float)
    n_gt, n_pred = cost.shape
    if n_gt == 0 or n_pred == 0:
        return 0.0
    if n_gt <= n_pred:
        return min(
            math.fsum(cost[q, p] for q, p in enumerate(perm))
            for perm in itertools.permutations(range(n_pred), n_gt)
        )
    return brute_force_assignment(cost.T)


def exhaustive_min_avg(edges, positions, weights):
    """Lowest mean edge weight over valid polygon cycles; None if none."""
    best = None
    for cyc in valid_polygon_cycles(edges, positions):
        avg = math.fsum(weights[l] for l in cyc) / len(cyc)
        if best is None or avg < best[0]:
            best = (avg, cyc)
    return best


def random_connected_graph(rng, max_v=10, max_e=15):
    """Random connected simple graph with random coordinates (crossings allowed)."""
    V = int(rng.integers(3, max_v + 1))
    max_edges = min(max_e, V * (V - 1) // 2)
    E = int(rng.integers(V - 1, max_edges + 1))
    perm = rng.permutation(V)
    pairs = set()
    for i in range(1, V):
        a, b = int(perm[i]), int(perm[rng.integers(i)])
        pairs.add((min(a, b), max(a, b)))
    others = [(a, b) for a in range(V) for b in range(a + 1, V) if (a, b) not in pairs]
    rng.shuffle(others)
    pairs.update(others[: E - len(pairs)])
    pos = rng.uniform(0.05, 0.95, size=(V, 2))
    return _wireframe(pos, sorted(pairs))


def random_planar_graph(rng, max_v=8):
    """Random connected straight-line planar graph (subgraph of a Delaunay triangulation)."""
    V = int(rng.integers(3, max_v + 1))
    pos = rng.uniform(0.05, 0.95, size=(V, 2))
    tri = Delaunay(pos)
    cand = set()
    for s in tri.simplices:
        for a, b in ((s[0], s[1]), (s[1], s[2]), (s[0], s[2])):
            cand.add((int(min(a, b)), int(max(a, b))))
    cand = sorted(cand)
    order = rng.permutation(len(cand))
    # random spanning tree via Kruskal on shuffled edges, then random extras
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = set()
    rest = []
    for i in order:
        a, b = cand[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.add((a, b))
        else:
            rest.append((a, b))
    keep = rng.random(len(rest)) < rng.uniform(0.3, 1.0)
    chosen.update(e for e, k in zip(rest, keep) if k)
    return _wireframe(pos, sorted(chosen))


def _wireframe(pos, pairs):
    junctions = [Junction(i, (float(x), float(y))) for i, (x, y) in enumerate(pos)]
    lines = [LineSegment(i, p) for i, p in enumerate(pairs)]
    return Wireframe(junctions, lines)
