"""
Bounded matching and training losses
====================================

Detections are matched to annotations by an optimal one-to-one
assignment; pairs that are still too far apart are dropped.  The losses
are reference implementations for checking training code.
"""

# %%
# Line distance takes the better of the two endpoint pairings.
import math

import numpy as np

from wirepoly.matching import (
    MatchResult,
    classification_loss,
    line_distance,
    match_centroids,
    match_lines,
    proposal_loss,
)

print(line_distance(((0, 0), (1, 0)), ((1, 0.1), (0, 0.1))))

# %%
# With a bound, only close pairs survive: the second prediction is the
# best partner of the first gt line but still too far away.
gt = [((0.1, 0.1), (0.5, 0.1)), ((0.5, 0.1), (0.5, 0.6))]
pred = [((0.51, 0.6), (0.5, 0.12)), ((0.1, 0.2), (0.5, 0.25))]
res = match_lines(pred, gt, alpha=0.01)
print(res.pairs, res.unmatched_gt, res.unmatched_pred)

# %%
# Anchors on a 5 x 5 grid matched to plane centroids.
anchors = [((i + 0.5) / 5, (j + 0.5) / 5) for j in range(5) for i in range(5)]
print(match_centroids(anchors, [(0.12, 0.08), (0.71, 0.52)]).pairs)

# %%
# Uniform scores of 0.5 cost log 2 per line in the proposal loss; uniform
# class scores cost log 4.
from wirepoly.geometry import Polygon
from wirepoly.scene import Label, PlaneAnnotation

plane = PlaneAnnotation.from_polygon(
    Polygon(((0.1, 0.1), (0.9, 0.1), (0.5, 0.9))), [0, 1, 2], Label.WALL
)
ident3 = MatchResult(((0, 0), (1, 1), (2, 2)), (), ())
one = MatchResult(((0, 0),), (), ())
print(proposal_loss(np.full((3, 1), 0.5), [plane], ident3, one), math.log(2))
print(classification_loss(np.full((1, 4), 0.25), [Label.WALL], one), math.log(4))
