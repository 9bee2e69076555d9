"""
=================================
Bounded bipartite matching, losses
=================================

Matchings solve the exact linear assignment problem and then drop pairs
whose cost reaches a bound.  The losses take already-computed scores; they
are reference implementations for checking training code, not training
code themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .scene import Label, PlaneAnnotation

__all__ = [
    "LossConfig",
    "MatchResult",
    "LossValue",
    "line_distance",
    "line_distance_matrix",
    "match_lines",
    "match_centroids",
    "match_cost_matrix",
    "proposal_loss",
    "classification_loss",
    "EPS_FLOOR",
]

EPS_FLOOR = 1e-7


@dataclass(frozen=True)
class LossConfig:
    alpha: float = 0.01
    tau_c: float = 0.1
    class_weights: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.alpha <= 0 or self.tau_c <= 0:
            raise ValueError("alpha and tau_c must be positive")
        w = tuple(float(x) for x in self.class_weights)
        if len(w) != 4 or any(x < 0 for x in w):
            raise ValueError("class_weights must be four nonnegative numbers")
        object.__setattr__(self, "class_weights", w)


@dataclass(frozen=True)
class MatchResult:
    """Outcome of a bounded assignment.

    ``pairs`` holds ``(gt index, pred index)`` tuples sorted by gt index.
    ``cost`` is the total cost of the optimal assignment before any pair
    was excluded by the bound.
    """

    pairs: tuple[tuple[int, int], ...]
    unmatched_gt: tuple[int, ...]
    unmatched_pred: tuple[int, ...]
    cost: float = 0.0

    def gt_to_pred(self) -> dict[int, int]:
        return dict(self.pairs)

    def pred_to_gt(self) -> dict[int, int]:
        return {p: g for g, p in self.pairs}


class LossValue(float):
    """A float loss that also reports how many gt planes were left out."""

    excluded: int

    def __new__(cls, value, excluded=0):
        obj = super().__new__(cls, value)
        obj.excluded = excluded
        return obj


def line_distance(seg, gt_seg) -> float:
    """Squared endpoint distance under the better of the two endpoint pairings."""
    (u, v), (gu, gv) = np.asarray(seg, float), np.asarray(gt_seg, float)
    same = np.sum((u - gu) ** 2) + np.sum((v - gv) ** 2)
    swap = np.sum((u - gv) ** 2) + np.sum((v - gu) ** 2)
    return float(min(same, swap))


def line_distance_matrix(pred, gt) -> np.ndarray:
    """``D[q, j]`` = distance between gt segment ``q`` and predicted segment ``j``."""
    p = np.asarray(pred, float).reshape(-1, 2, 2)
    g = np.asarray(gt, float).reshape(-1, 2, 2)
    pu, pv = p[None, :, 0], p[None, :, 1]
    gu, gv = g[:, None, 0], g[:, None, 1]
    same = np.sum((pu - gu) ** 2, -1) + np.sum((pv - gv) ** 2, -1)
    swap = np.sum((pu - gv) ** 2, -1) + np.sum((pv - gu) ** 2, -1)
    return np.minimum(same, swap)


def match_cost_matrix(cost: np.ndarray, bound: float | None = None) -> MatchResult:
    """Optimal assignment on a ``(n_gt, n_pred)`` cost matrix, then bound.

    Pairs with cost ``>= bound`` are moved to the unmatched lists.
    """
    cost = np.asarray(cost, dtype=float)
    n_gt, n_pred = cost.shape
    if n_gt == 0 or n_pred == 0:
        return MatchResult((), tuple(range(n_gt)), tuple(range(n_pred)), 0.0)
    rows, cols = linear_sum_assignment(cost)
    total = float(cost[rows, cols].sum())
    pairs = []
    for r, c in zip(rows.tolist(), cols.tolist()):
        if bound is None or cost[r, c] < bound:
            pairs.append((r, c))
    matched_gt = {r for r, _ in pairs}
    matched_pred = {c for _, c in pairs}
    return MatchResult(
        tuple(pairs),
        tuple(i for i in range(n_gt) if i not in matched_gt),
        tuple(j for j in range(n_pred) if j not in matched_pred),
        total,
    )


def match_lines(pred: Sequence, gt: Sequence, alpha: float = LossConfig.alpha) -> MatchResult:
    """Match detected to annotated segments by minimum total line distance.

    Parameters
    ----------
    pred, gt : sequence of segments
        Each segment is a pair of 2D endpoints.
    alpha : float
        Pairs whose distance is not below ``alpha`` are excluded.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if len(pred) == 0 or len(gt) == 0:
        return MatchResult((), tuple(range(len(gt))), tuple(range(len(pred))), 0.0)
    return match_cost_matrix(line_distance_matrix(pred, gt), alpha)


def match_centroids(pred_points, gt_points, bound: float | None = None) -> MatchResult:
    """Match points by minimum summed Euclidean distance, optionally bounded."""
    if bound is not None and bound <= 0:
        raise ValueError("bound must be positive")
    p = np.asarray(pred_points, float).reshape(-1, 2)
    g = np.asarray(gt_points, float).reshape(-1, 2)
    if len(p) == 0 or len(g) == 0:
        return MatchResult((), tuple(range(len(g))), tuple(range(len(p))), 0.0)
    cost = np.hypot(g[:, None, 0] - p[None, :, 0], g[:, None, 1] - p[None, :, 1])
    return match_cost_matrix(cost, bound)


def proposal_loss(
    score_matrix,
    gt_planes: Sequence[PlaneAnnotation],
    line_match: MatchResult,
    anchor_match: MatchResult,
    gt_line_ids: Sequence[int] | None = None,
    literal: bool = False,
) -> LossValue:
    """Binary cross entropy between line/anchor scores and plane membership.

    Parameters
    ----------
    score_matrix : array_like, shape (n_lines, n_anchors)
        Post-sigmoid score of detected line ``j`` belonging to anchor ``k``'s
        plane; every entry must lie strictly inside (0, 1).
    gt_planes : sequence of PlaneAnnotation
    line_match : MatchResult
        Annotated lines (gt side) matched to detected lines (pred side).
    anchor_match : MatchResult
        Annotated planes (gt side) matched to anchors (pred side).
    gt_line_ids : sequence of int, optional
        Line id of each gt index in ``line_match``; by default gt index
        ``q`` is line id ``q``.
    literal : bool
        Return the log-likelihood sum without the leading minus sign.

    Returns
    -------
    LossValue
        Mean over planes with a matched anchor of the per-plane BCE sum
        divided by the plane's line count.  ``.excluded`` counts planes
        without an anchor, which are left out.
    """
    s = np.asarray(score_matrix, dtype=float)
    if s.ndim != 2:
        raise ValueError("score_matrix must be 2-D (lines x anchors)")
    if np.any(~(s > 0) | ~(s < 1)):
        raise ValueError("scores must lie strictly inside (0, 1)")
    q_to_id = list(gt_line_ids) if gt_line_ids is not None else None
    detected_of = {}
    for q, j in line_match.pairs:
        lid = q_to_id[q] if q_to_id is not None else q
        detected_of[lid] = j
    plane_anchor = anchor_match.gt_to_pred()

    terms = []
    excluded = 0
    for m, plane in enumerate(gt_planes):
        k = plane_anchor.get(m)
        if k is None:
            excluded += 1
            continue
        members = np.zeros(s.shape[0], dtype=bool)
        for lid in plane.line_ids:
            if lid in detected_of:
                members[detected_of[lid]] = True
        col = s[:, k]
        ll = np.sum(np.log(col[members])) + np.sum(np.log1p(-col[~members]))
        terms.append(ll / len(plane.line_ids))
    if not terms:
        return LossValue(0.0, excluded)
    value = math.fsum(terms) / len(terms)
    return LossValue(value if literal else -value, excluded)


def classification_loss(
    class_scores,
    gt_labels: Sequence,
    centroid_match: MatchResult,
    weights: Sequence[float] = (1.0, 1.0, 1.0, 1.0),
    literal: bool = False,
) -> float:
    """Weighted cross entropy of matched plane classifications.

    ``class_scores[k]`` is the 4-vector (background, wall, floor, ceiling)
    of proposal ``k``.  Gt plane ``m`` contributes
    ``w[y_m] * -log s[k][y_m]`` for its matched proposal ``k``; unmatched
    planes count as missed with probability ``EPS_FLOOR``.  With
    ``literal=True`` the contribution is ``-w[y_m] * s[k][y_m]`` and
    unmatched planes contribute 0.
    """
    s = np.asarray(class_scores, dtype=float).reshape(-1, 4)
    if np.any(s < 0) or np.any(np.abs(s.sum(axis=1) - 1.0) > 1e-6):
        raise ValueError("class score vectors must be nonnegative and sum to 1")
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,):
        raise ValueError("weights must be a 4-vector")
    G = len(gt_labels)
    if G == 0:
        return 0.0
    match = centroid_match.gt_to_pred()
    total = []
    for m, y in enumerate(gt_labels):
        y = int(Label.parse(y))
        k = match.get(m)
        if literal:
            total.append(0.0 if k is None else -w[y] * s[k, y])
        else:
            p = EPS_FLOOR if k is None else max(s[k, y], EPS_FLOOR)
            total.append(-w[y] * math.log(p))
    return math.fsum(total) / G
