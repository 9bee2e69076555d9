"""
========================
Room-layout evaluation
========================

Per-image layout scores (polygon IoU under a greedy largest-first mapping,
and pixel labelling error), polygon average precision over IoU thresholds
0.50:0.05:0.95, and the all-pairs polygon NMS used before evaluation.

All IoUs are computed on rasterized masks at a common resolution.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

from .geometry import DEFAULT_RESOLUTION, Polygon, rasterize
from .scene import SEMANTIC_LABELS, Label

__all__ = [
    "GAMMAS",
    "ScoredDetection",
    "ImageResult",
    "EvalReport",
    "iou_matrix",
    "layout_mapping",
    "image_iou",
    "pixel_error",
    "label_map",
    "polygon_ap",
    "mean_pap",
    "nms",
    "nms_indices",
    "evaluate",
]

# exact decimal thresholds: 10/20, 11/20, ..., 19/20
GAMMAS = tuple(k / 20 for k in range(10, 20))


@dataclass(frozen=True)
class ScoredDetection:
    """A detected polygon with (background, wall, floor, ceiling) scores."""

    polygon: Polygon
    scores: tuple[float, float, float, float]

    def __post_init__(self):
        s = tuple(float(x) for x in self.scores)
        if len(s) != 4:
            raise ValueError("scores must have four entries")
        if any(x < 0 or x > 1 for x in s) or abs(math.fsum(s) - 1.0) > 1e-6:
            raise ValueError("scores must lie in [0, 1] and sum to 1")
        object.__setattr__(self, "scores", s)

    @property
    def predicted_label(self) -> Label:
        best = int(np.argmax(self.scores))
        if best == Label.BACKGROUND:
            return Label.BACKGROUND
        return Label(1 + int(np.argmax(self.scores[1:])))

    def score(self, mode: str = "foreground") -> float:
        if mode == "foreground":
            return max(self.scores[1:])
        if mode == "max":
            return max(self.scores)
        raise ValueError(f"unknown score mode {mode!r}")


def _masks(polys, R):
    return [rasterize(p, R).bits for p in polys]


def _iou_from_masks(a_masks, b_masks) -> np.ndarray:
    out = np.zeros((len(a_masks), len(b_masks)))
    if not a_masks or not b_masks:
        return out
    a = np.stack(a_masks).reshape(len(a_masks), -1)
    b = np.stack(b_masks).reshape(len(b_masks), -1)
    # float64 products are exact for pixel counts below 2**53
    inter = a.astype(np.float64) @ b.T.astype(np.float64)
    area_a = a.sum(axis=1)
    area_b = b.sum(axis=1)
    union = area_a[:, None] + area_b[None, :] - inter
    np.divide(inter, union, out=out, where=union > 0)
    return out


def iou_matrix(a: Sequence[Polygon], b: Sequence[Polygon], resolution: int = DEFAULT_RESOLUTION):
    """Pixel IoU between every polygon of ``a`` (rows) and ``b`` (columns)."""
    return _iou_from_masks(_masks(a, resolution), _masks(b, resolution))


def _greedy_mapping(gt_areas, ious) -> dict[int, int]:
    order = sorted(range(len(gt_areas)), key=lambda m: (-gt_areas[m], m))
    taken: set[int] = set()
    mapping = {}
    for m in order:
        best, best_iou = None, 0.0
        for k in range(ious.shape[1]):
            if k in taken:
                continue
            if ious[m, k] > best_iou:
                best, best_iou = k, ious[m, k]
        if best is not None:
            mapping[m] = best
            taken.add(best)
    return mapping


def layout_mapping(
    gt: Sequence[Polygon], pred: Sequence[Polygon], resolution: int = DEFAULT_RESOLUTION
) -> dict[int, int]:
    """Greedy one-to-one gt -> prediction mapping.

    Ground-truth polygons are visited from largest to smallest area; each
    takes the still-free prediction with the highest IoU (lowest index on
    ties).  Gt polygons that overlap no free prediction stay unmapped.
    """
    return _greedy_mapping([p.area for p in gt], iou_matrix(gt, pred, resolution))


def _image_iou(ious, gt_areas) -> float:
    M, K = ious.shape
    if M + K == 0:
        return 1.0
    mapping = _greedy_mapping(gt_areas, ious)
    return 2.0 * math.fsum(ious[m, k] for m, k in mapping.items()) / (M + K)


def image_iou(
    gt: Sequence[Polygon], pred: Sequence[Polygon], resolution: int = DEFAULT_RESOLUTION
) -> float:
    """Layout IoU of one image, ``2 / (M + K) * sum of mapped IoUs``.

    Unmapped gt polygons contribute 0.  An image with neither gt nor
    predictions scores 1.
    """
    return _image_iou(iou_matrix(gt, pred, resolution), [p.area for p in gt])


def _paint(masks, labels, areas, R) -> np.ndarray:
    out = np.zeros((R, R), dtype=np.uint8)
    # largest first so smaller polygons end on top
    for i in sorted(range(len(masks)), key=lambda i: (-areas[i], i)):
        out[masks[i]] = int(labels[i])
    return out


def label_map(labelled: Sequence[tuple[Polygon, Label]], resolution: int = DEFAULT_RESOLUTION):
    """``R x R`` array of label indices; uncovered pixels are background (0)."""
    polys = [p for p, _ in labelled]
    return _paint(
        _masks(polys, resolution),
        [Label.parse(l) for _, l in labelled],
        [p.area for p in polys],
        resolution,
    )


def pixel_error(
    gt: Sequence[tuple[Polygon, Label]],
    pred: Sequence[tuple[Polygon, Label]],
    resolution: int = DEFAULT_RESOLUTION,
) -> float:
    """Fraction of pixels whose gt and predicted labels differ.

    Background counts as a fourth label.  Overlaps are resolved by painting
    polygons in order of decreasing area.
    """
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    a = label_map(gt, resolution)
    b = label_map(pred, resolution)
    return float(np.count_nonzero(a != b)) / a.size


@dataclass
class _ImageData:
    gt_labels: list
    det_labels: list
    det_scores: list
    ious: np.ndarray  # gt x det


def _ap_images(dets, gts, R) -> dict:
    out = {}
    for key in sorted(set(dets) | set(gts), key=_sort_key):
        d = list(dets.get(key, ()))
        g = list(gts.get(key, ()))
        out[key] = _ImageData(
            [Label.parse(l) for _, l in g],
            [x.predicted_label for x in d],
            [x.scores for x in d],
            iou_matrix([p for p, _ in g], [x.polygon for x in d], R),
        )
    return out


def _sort_key(key):
    # image ids may mix ints and strings
    return (isinstance(key, str), key)


def _ap_from_images(images: Mapping[Hashable, _ImageData], label: Label, gamma: float) -> float:
    ranked = []
    n_pos = 0
    for order, (key, data) in enumerate(images.items()):
        n_pos += sum(1 for y in data.gt_labels if y == label)
        for idx, (lab, s) in enumerate(zip(data.det_labels, data.det_scores)):
            if lab == label:
                ranked.append((-s[int(label)], order, idx, key))
    ranked.sort(key=lambda r: r[:3])
    if n_pos == 0:
        return 0.0 if ranked else 1.0
    if not ranked:
        return 0.0
    used = {key: set() for key in images}
    tp = np.zeros(len(ranked))
    for r, (_, _, idx, key) in enumerate(ranked):
        data = images[key]
        best, best_iou = None, -1.0
        for m, y in enumerate(data.gt_labels):
            if y != label or m in used[key]:
                continue
            iou = data.ious[m, idx]
            if iou >= gamma and iou > best_iou:
                best, best_iou = m, iou
        if best is not None:
            used[key].add(best)
            tp[r] = 1
    ctp = np.cumsum(tp)
    recall = ctp / n_pos
    precision = ctp / np.arange(1, len(ranked) + 1)
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    prev = np.concatenate([[0.0], recall[:-1]])
    return float(np.sum((recall - prev) * envelope))


def polygon_ap(
    dets: Mapping[Hashable, Sequence[ScoredDetection]],
    gts: Mapping[Hashable, Sequence[tuple[Polygon, Label]]],
    label,
    gamma: float,
    resolution: int = DEFAULT_RESOLUTION,
) -> float:
    """Polygon average precision of one class at IoU threshold ``gamma``.

    Detections predicted as ``label`` are ranked by their ``label`` score
    (ties: image id, then detection index).  A detection is a true positive
    when a not-yet-matched gt polygon of the same class in its image has
    IoU >= ``gamma``; the highest-IoU one is consumed.  AP is the exact
    area under the precision envelope.  With no gt of the class, AP is 1 if
    there are also no detections, else 0.
    """
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    return _ap_from_images(_ap_images(dets, gts, resolution), Label.parse(label), gamma)


def _mean_pap_from_images(images) -> dict:
    table = {
        lab.key: {g: _ap_from_images(images, lab, g) for g in GAMMAS} for lab in SEMANTIC_LABELS
    }
    pap_m = {k: float(np.mean(list(v.values()))) for k, v in table.items()}
    return {"pap_gamma": table, "pap_m": pap_m, "mpap_m": float(np.mean(list(pap_m.values())))}


def mean_pap(
    dets: Mapping[Hashable, Sequence[ScoredDetection]],
    gts: Mapping[Hashable, Sequence[tuple[Polygon, Label]]],
    resolution: int = DEFAULT_RESOLUTION,
) -> dict:
    """Polygon AP averaged over thresholds and classes.

    Returns
    -------
    dict
        ``pap_gamma[class][gamma]``, ``pap_m[class]`` (mean over the ten
        thresholds) and ``mpap_m`` (mean over wall, floor, ceiling).
    """
    return _mean_pap_from_images(_ap_images(dets, gts, resolution))


def nms_indices(
    dets: Sequence[ScoredDetection],
    iou_threshold: float = 0.05,
    resolution: int = DEFAULT_RESOLUTION,
    score: str = "foreground",
    ious: np.ndarray | None = None,
) -> list[int]:
    """Indices of detections that survive NMS, in input order.

    A detection is dropped if any other detection, suppressed or not, has a
    strictly higher score and IoU above ``iou_threshold`` with it.
    """
    if ious is None:
        polys = [d.polygon for d in dets]
        ious = iou_matrix(polys, polys, resolution)
    s = np.array([d.score(score) for d in dets])
    keep = []
    for k in range(len(dets)):
        beaten = (s > s[k]) & (ious[:, k] > iou_threshold)
        if not beaten.any():
            keep.append(k)
    return keep


def nms(
    dets: Sequence[ScoredDetection],
    iou_threshold: float = 0.05,
    resolution: int = DEFAULT_RESOLUTION,
    score: str = "foreground",
) -> list[ScoredDetection]:
    """Polygon non-maximum suppression; see ``nms_indices``."""
    return [dets[i] for i in nms_indices(dets, iou_threshold, resolution, score)]


@dataclass(frozen=True)
class ImageResult:
    image_id: Hashable
    eps_iou: float
    eps_pe: float
    M: int
    K: int


@dataclass
class EvalReport:
    """Per-image layout scores, their means, and the polygon AP table.

    All values are fractions in [0, 1]; ``to_dict`` converts to percent.
    """

    per_image: list[ImageResult] = field(default_factory=list)
    eps_iou_mean: float = 1.0
    eps_pe_mean: float = 0.0
    pap_gamma: dict = field(default_factory=dict)
    pap_m: dict = field(default_factory=dict)
    mpap_m: float = 1.0

    def to_dict(self, digits: int = 2) -> dict:
        def pct(x):
            return round(100.0 * x, digits)

        return {
            "per_image": [
                {
                    "image_id": r.image_id,
                    "eps_iou": pct(r.eps_iou),
                    "eps_pe": pct(r.eps_pe),
                    "M": r.M,
                    "K": r.K,
                }
                for r in self.per_image
            ],
            "aggregate": {"eps_iou_mean": pct(self.eps_iou_mean), "eps_pe_mean": pct(self.eps_pe_mean)},
            "ap": {
                "pap_gamma": {
                    c: {f"{g:.2f}": pct(v) for g, v in t.items()} for c, t in self.pap_gamma.items()
                },
                "pap_m": {c: pct(v) for c, v in self.pap_m.items()},
                "mpap_m": pct(self.mpap_m),
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        def frac(x):
            return x / 100.0

        ap = d["ap"]
        return cls(
            [
                ImageResult(r["image_id"], frac(r["eps_iou"]), frac(r["eps_pe"]), r["M"], r["K"])
                for r in d["per_image"]
            ],
            frac(d["aggregate"]["eps_iou_mean"]),
            frac(d["aggregate"]["eps_pe_mean"]),
            {c: {float(g): frac(v) for g, v in t.items()} for c, t in ap["pap_gamma"].items()},
            {c: frac(v) for c, v in ap["pap_m"].items()},
            frac(ap["mpap_m"]),
        )

    def table(self) -> str:
        head = ["pAP^m wall", "pAP^m floor", "pAP^m ceiling", "mpAP^m", "eps[IoU]", "eps[PE]"]
        vals = [
            100 * self.pap_m.get("wall", 0.0),
            100 * self.pap_m.get("floor", 0.0),
            100 * self.pap_m.get("ceiling", 0.0),
            100 * self.mpap_m,
            100 * self.eps_iou_mean,
            100 * self.eps_pe_mean,
        ]
        widths = [max(len(h), 8) for h in head]
        top = " | ".join(h.rjust(w) for h, w in zip(head, widths))
        row = " | ".join(f"{v:.2f}".rjust(w) for v, w in zip(vals, widths))
        return f"{top}\n{'-' * len(top)}\n{row}"


def _workers() -> int:
    env = os.environ.get("WP_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def evaluate(
    gts: Mapping[Hashable, Sequence[tuple[Polygon, Label]]],
    dets: Mapping[Hashable, Sequence[ScoredDetection]],
    resolution: int = DEFAULT_RESOLUTION,
    nms_threshold: float | None = 0.05,
    workers: int | None = None,
) -> EvalReport:
    """Run NMS and every metric over a set of images.

    Detections predicted as background are dropped before evaluation.
    Images are processed in parallel (``workers``, default ``WP_THREADS``
    or the CPU count) and reduced in sorted image-id order.
    """
    R = resolution
    keys = sorted(set(gts) | set(dets), key=_sort_key)

    def one(key):
        g = list(gts.get(key, ()))
        d = [x for x in dets.get(key, ()) if x.predicted_label != Label.BACKGROUND]
        d_masks = _masks([x.polygon for x in d], R)
        if nms_threshold is not None and d:
            keep = nms_indices(d, nms_threshold, R, ious=_iou_from_masks(d_masks, d_masks))
            d = [d[i] for i in keep]
            d_masks = [d_masks[i] for i in keep]
        g_polys = [p for p, _ in g]
        g_labels = [Label.parse(l) for _, l in g]
        g_masks = _masks(g_polys, R)
        ious = _iou_from_masks(g_masks, d_masks)
        g_areas = [p.area for p in g_polys]
        d_areas = [x.polygon.area for x in d]
        eps_iou = _image_iou(ious, g_areas)
        a = _paint(g_masks, g_labels, g_areas, R)
        b = _paint(d_masks, [x.predicted_label for x in d], d_areas, R)
        eps_pe = float(np.count_nonzero(a != b)) / a.size
        data = _ImageData(g_labels, [x.predicted_label for x in d], [x.scores for x in d], ious)
        return ImageResult(key, eps_iou, eps_pe, len(g), len(d)), data

    n = workers if workers is not None else _workers()
    if n > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(one, keys))
    else:
        results = [one(k) for k in keys]

    per_image = [r for r, _ in results]
    images = {k: data for k, (_, data) in zip(keys, results)}
    ap = _mean_pap_from_images(images)
    return EvalReport(
        per_image,
        math.fsum(r.eps_iou for r in per_image) / len(per_image) if per_image else 1.0,
        math.fsum(r.eps_pe for r in per_image) / len(per_image) if per_image else 0.0,
        ap["pap_gamma"],
        ap["pap_m"],
        ap["mpap_m"],
    )
