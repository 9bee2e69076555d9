"""
Plane proposals from line scores
================================

Each plane anchor scores every line.  Lines above a threshold form a
graph with weights ``1 - score`` and the proposal is its cycle of lowest
average weight, found greedily.
"""

# %%
# A triangle with an interior point.  The inner lines score higher, so
# the small triangle 0-3-1 beats the outer one on average weight.
from wirepoly.graph import Junction, LineSegment, Wireframe, build_graph
from wirepoly.optimizer import ProposalConfig, WeightedGraph, iter_min_avg_weight, propose_polygon

pts = [(0.1, 0.1), (0.9, 0.1), (0.5, 0.9), (0.5, 0.3)]
pairs = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)]
wf = Wireframe(
    [Junction(i, p) for i, p in enumerate(pts)],
    [LineSegment(i, e) for i, e in enumerate(pairs)],
)
scores = {0: 0.9, 1: 0.9, 2: 0.9, 3: 0.99, 4: 0.99}
prop = propose_polygon(wf, scores, ProposalConfig(kappa=0.5))
print(sorted(prop.cycle.edges), round(prop.avg_weight, 4))

# %%
# The search tries edges from cheapest to dearest.  Each is removed, the
# cheapest path between its endpoints closes a cycle, and the best valid
# polygon so far is kept.
wg = WeightedGraph(build_graph(wf), {k: 1 - s for k, s in scores.items()})
for cand, best in iter_min_avg_weight(wg, wf.positions):
    print(
        sorted(cand.cycle.edges) if cand else None,
        "best avg", round(best.avg_weight, 4) if best else None,
    )

# %%
# On a synthetic room, ideal scores from the annotation make every
# anchor that owns a plane propose exactly that plane.
from wirepoly.optimizer import propose_all
from wirepoly.synthetic import oracle_scores, random_room_scene

scene = random_room_scene(3)
props = propose_all(scene.wireframe, oracle_scores(scene.wireframe, scene))
found = {p.cycle.edges for p in props if p is not None}
print(len(found), "distinct proposals for", len(scene.planes), "planes")
