"""
==========================
Synthetic wireframes
==========================

Stand-ins for a trained network: wireframes perturbed from ground truth,
the 5 x 5 plane-anchor grid, oracle line/anchor scores built from the
annotation, oracle class scores for proposals, and random box-room
scenes to feed them.

The perturbation model (per-junction Gaussian jitter, optional segment
drop-out and spurious segments) is a simple stand-in for a real detector's
errors, chosen so noise can be dialled up from zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .evaluation import ScoredDetection
from .geometry import Point2
from .graph import Junction, LineSegment, Wireframe
from .matching import LossConfig, match_centroids, match_lines
from .optimizer import Proposal
from .scene import Label, Scene, scene_from_polygons

__all__ = [
    "SynthConfig",
    "ORACLE_EPS",
    "generate_synthetic",
    "anchor_grid",
    "oracle_scores",
    "oracle_class_scores",
    "box_room_scene",
    "corner_room_scene",
    "random_room_scene",
]

ORACLE_EPS = 1e-6


@dataclass(frozen=True)
class SynthConfig:
    sigma: float = 0.005
    drop_prob: float = 0.0
    spurious_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        for name in ("drop_prob", "spurious_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


def generate_synthetic(scene: Scene | Wireframe, config: SynthConfig | None = None) -> Wireframe:
    """Perturb an annotated wireframe into a synthetic detection.

    Every junction is jittered once by isotropic Gaussian noise, so all
    segments sharing it stay connected.  Each segment is then dropped with
    ``drop_prob``, and with ``spurious_prob`` per segment a random segment
    between two uniform points is added.  Positions are clamped to the unit
    square.  Junction and line ids of the annotation are kept.
    """
    config = config or SynthConfig()
    wf = scene.wireframe if isinstance(scene, Scene) else scene
    rng = np.random.default_rng(config.seed)

    pos = np.array([j.position for j in wf.junctions], dtype=float).reshape(-1, 2)
    noise = rng.normal(0.0, 1.0, size=pos.shape) * config.sigma
    moved = np.clip(pos + noise, 0.0, 1.0)
    junctions = [
        Junction(j.id, Point2(float(x), float(y)), j.kind)
        for j, (x, y) in zip(wf.junctions, moved.tolist())
    ]

    keep = rng.random(len(wf.lines)) >= config.drop_prob
    lines = [l for l, k in zip(wf.lines, keep) if k]

    n_spurious = int(np.sum(rng.random(len(wf.lines)) < config.spurious_prob))
    next_j = max((j.id for j in wf.junctions), default=-1) + 1
    next_l = max((l.id for l in wf.lines), default=-1) + 1
    for _ in range(n_spurious):
        a, b = rng.random((2, 2)).tolist()
        junctions.append(Junction(next_j, Point2(*a)))
        junctions.append(Junction(next_j + 1, Point2(*b)))
        lines.append(LineSegment(next_l, (next_j, next_j + 1)))
        next_j += 2
        next_l += 1
    return Wireframe(tuple(junctions), tuple(lines))


def anchor_grid(n: int = 5) -> list[Point2]:
    """Centers of an ``n x n`` partition of the unit square, row by row."""
    return [Point2((i + 0.5) / n, (j + 0.5) / n) for j in range(n) for i in range(n)]


def oracle_scores(
    wireframe: Wireframe,
    scene: Scene,
    anchors: Sequence[Point2] | None = None,
    alpha: float = LossConfig.alpha,
    eps: float = ORACLE_EPS,
) -> list[dict[int, float]]:
    """Ideal line/anchor scores derived from the annotation.

    Annotated planes are matched one-to-one to anchors by centroid
    distance and annotated lines to detected lines by line distance.  An
    anchor scores ``1 - eps`` on the detected lines matched into its plane
    and ``eps`` everywhere else; anchors without a plane score ``eps``
    throughout.
    """
    anchors = anchor_grid() if anchors is None else list(anchors)
    planes = scene.plane_annotations()
    gt_lines = list(scene.lines)
    gt_pos = scene.wireframe.positions
    gt_segs = [(gt_pos[l.endpoints[0]], gt_pos[l.endpoints[1]]) for l in gt_lines]
    lm = match_lines(wireframe.segments(), gt_segs, alpha)
    detected_of = {gt_lines[q].id: wireframe.lines[j].id for q, j in lm.pairs}
    am = match_centroids(anchors, [p.centroid for p in planes])

    out = [{l.id: eps for l in wireframe.lines} for _ in anchors]
    for m, k in am.pairs:
        for lid in planes[m].line_ids:
            if lid in detected_of:
                out[k][detected_of[lid]] = 1.0 - eps
    return out


def oracle_class_scores(
    proposals: Sequence[Proposal | None],
    scene: Scene,
    tau_c: float = LossConfig.tau_c,
) -> list[ScoredDetection]:
    """One-hot class scores for proposals, taken from centroid-matched planes.

    Proposals that match no annotated plane within ``tau_c`` are scored as
    background.  ``None`` entries are skipped.
    """
    props = [p for p in proposals if p is not None]
    planes = scene.plane_annotations()
    cm = match_centroids(
        [p.polygon.centroid for p in props], [a.centroid for a in planes], bound=tau_c
    )
    label_of = {k: planes[m].label for m, k in cm.pairs}
    out = []
    for k, p in enumerate(props):
        scores = [0.0] * 4
        scores[int(label_of.get(k, Label.BACKGROUND))] = 1.0
        out.append(ScoredDetection(p.polygon, tuple(scores)))
    return out


def _border_t(p) -> float:
    # clockwise perimeter parameter in image coordinates (y down)
    x, y = p
    if y == 0.0 and x < 1.0:
        return x
    if x == 1.0 and y < 1.0:
        return 1.0 + y
    if y == 1.0 and x > 0.0:
        return 3.0 - x
    return 4.0 - y


def _border_walk(a, b) -> list[tuple[float, float]]:
    """Image corners passed going clockwise from border point a to b."""
    corners = {1.0: (1.0, 0.0), 2.0: (1.0, 1.0), 3.0: (0.0, 1.0), 4.0: (0.0, 0.0)}
    ta, tb = _border_t(a), _border_t(b)
    if tb <= ta:
        tb += 4.0
    out = []
    for k in range(int(np.floor(ta)) + 1, int(np.ceil(tb))):
        c = corners[((k - 1) % 4) + 1]
        out.append(c)
    return out


def _ray_to_border(origin, through) -> tuple[float, float]:
    ox, oy = origin
    dx, dy = through[0] - ox, through[1] - oy
    ts = []
    if dx > 0:
        ts.append((1.0 - ox) / dx)
    elif dx < 0:
        ts.append(-ox / dx)
    if dy > 0:
        ts.append((1.0 - oy) / dy)
    elif dy < 0:
        ts.append(-oy / dy)
    t = min(ts)
    x = min(max(ox + t * dx, 0.0), 1.0)
    y = min(max(oy + t * dy, 0.0), 1.0)
    # snap onto the border that was hit
    if abs(x) < 1e-12:
        x = 0.0
    if abs(x - 1) < 1e-12:
        x = 1.0
    if abs(y) < 1e-12:
        y = 0.0
    if abs(y - 1) < 1e-12:
        y = 1.0
    return (x, y)


def box_room_scene(front, vanishing_point) -> Scene:
    """Five-plane view into a box room.

    ``front`` is the front wall as ``(top-left, top-right, bottom-right,
    bottom-left)``; rays from ``vanishing_point`` through its corners meet
    the image border and split the rest of the image into ceiling, right
    wall, floor and left wall.
    """
    tl, tr, br, bl = [tuple(map(float, p)) for p in front]
    vp = tuple(map(float, vanishing_point))
    ptl, ptr, pbr, pbl = (_ray_to_border(vp, c) for c in (tl, tr, br, bl))
    polys = [
        ([tl, tr, br, bl], Label.WALL),
        ([tl, ptl, *_border_walk(ptl, ptr), ptr, tr], Label.CEILING),
        ([tr, ptr, *_border_walk(ptr, pbr), pbr, br], Label.WALL),
        ([br, pbr, *_border_walk(pbr, pbl), pbl, bl], Label.FLOOR),
        ([bl, pbl, *_border_walk(pbl, ptl), ptl, tl], Label.WALL),
    ]
    return scene_from_polygons([(_dedupe(v), lab) for v, lab in polys])


def corner_room_scene(corner_x, corner_top, corner_bottom, left_y, right_y) -> Scene:
    """Four-plane view of a room corner.

    A vertical corner edge at ``corner_x`` spans ``corner_top`` to
    ``corner_bottom``; ceiling and floor edges run from its ends to the
    left and right image borders at heights ``left_y = (top, bottom)`` and
    ``right_y = (top, bottom)``.
    """
    ct = (float(corner_x), float(corner_top))
    cb = (float(corner_x), float(corner_bottom))
    lt, lb = (0.0, float(left_y[0])), (0.0, float(left_y[1]))
    rt, rb = (1.0, float(right_y[0])), (1.0, float(right_y[1]))
    polys = [
        ([ct, cb, lb, lt], Label.WALL),
        ([ct, rt, rb, cb], Label.WALL),
        ([ct, lt, (0.0, 0.0), (1.0, 0.0), rt], Label.CEILING),
        ([cb, rb, (1.0, 1.0), (0.0, 1.0), lb], Label.FLOOR),
    ]
    return scene_from_polygons(polys)


def _dedupe(verts):
    out = []
    for v in verts:
        if not out or (abs(out[-1][0] - v[0]) > 1e-12 or abs(out[-1][1] - v[1]) > 1e-12):
            out.append(v)
    if len(out) > 1 and abs(out[0][0] - out[-1][0]) <= 1e-12 and abs(out[0][1] - out[-1][1]) <= 1e-12:
        out.pop()
    return out


def random_room_scene(seed: int | np.random.Generator) -> Scene:
    """A random box or corner room view with 4-5 labelled planes."""
    rng = np.random.default_rng(seed)
    for _ in range(100):
        if rng.random() < 0.7:
            xl = rng.uniform(0.15, 0.4)
            xr = rng.uniform(0.6, 0.85)
            yt = rng.uniform(0.15, 0.4, size=2)
            yb = rng.uniform(0.6, 0.85, size=2)
            front = [(xl, yt[0]), (xr, yt[1]), (xr, yb[1]), (xl, yb[0])]
            vp = (rng.uniform(xl + 0.05, xr - 0.05), rng.uniform(max(yt) + 0.05, min(yb) - 0.05))
            scene = box_room_scene(front, vp)
        else:
            cx = rng.uniform(0.3, 0.7)
            ct, cb = rng.uniform(0.2, 0.4), rng.uniform(0.6, 0.8)
            scene = corner_room_scene(
                cx,
                ct,
                cb,
                (rng.uniform(0.02, ct - 0.05), rng.uniform(cb + 0.05, 0.98)),
                (rng.uniform(0.02, ct - 0.05), rng.uniform(cb + 0.05, 0.98)),
            )
        try:
            scene.validate()
        except ValueError:
            continue
        return scene
    raise RuntimeError("could not generate a valid room scene")  # pragma: no cover
