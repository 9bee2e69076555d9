import numpy as np
import pytest

from wirepoly.evaluation import (
    GAMMAS,
    EvalReport,
    ScoredDetection,
    evaluate,
    image_iou,
    iou_matrix,
    label_map,
    layout_mapping,
    mean_pap,
    nms,
    nms_indices,
    pixel_error,
    polygon_ap,
)
from wirepoly.geometry import Polygon, rasterize
from wirepoly.scene import Label

WALL = (0.0, 1.0, 0.0, 0.0)


def rect(x0, y0, x1, y1):
    return Polygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def det(poly, score=0.9, label=Label.WALL):
    s = [0.0, 0.0, 0.0, 0.0]
    s[int(label)] = score
    s[0] = 1.0 - score
    return ScoredDetection(poly, tuple(s))


A = rect(0.1, 0.1, 0.4, 0.4)
B = rect(0.6, 0.6, 0.9, 0.9)


def test_scored_detection_validation():
    with pytest.raises(ValueError):
        ScoredDetection(A, (0.5, 0.5, 0.5, 0.0))
    with pytest.raises(ValueError):
        ScoredDetection(A, (1.0, 0.0, 0.0))
    d = ScoredDetection(A, (0.4, 0.1, 0.3, 0.2))
    assert d.predicted_label == Label.BACKGROUND
    assert d.score() == 0.3 and d.score("max") == 0.4
    assert ScoredDetection(A, (0.2, 0.1, 0.3, 0.4)).predicted_label == Label.CEILING


def test_mapping_identity():
    m = layout_mapping([A, B], [B, A], 64)
    assert m == {0: 1, 1: 0}
    assert layout_mapping([A, B], [], 64) == {}


def test_mapping_largest_gt_first():
    big = rect(0.0, 0.0, 0.8, 0.5)  # area 0.4
    small = rect(0.0, 0.5, 0.2, 1.0)  # area 0.1
    pred = rect(0.0, 0.3, 0.4, 0.8)
    ious = iou_matrix([big, small], [pred], 200)
    assert ious[1, 0] > ious[0, 0] > 0  # small overlaps more, yet loses
    assert layout_mapping([small, big], [pred], 200) == {1: 0}


def test_image_iou_examples():
    assert image_iou([A, B], [A, B], 64) == 1.0
    assert image_iou([A], [A, B], 64) == pytest.approx(2 / 3)
    assert image_iou([A], [], 64) == 0.0
    assert image_iou([], [], 64) == 1.0


def test_spurious_detection_lowers_iou():
    gt = [A]
    pred = [rect(0.1, 0.1, 0.35, 0.4)]
    base = image_iou(gt, pred, 128)
    assert image_iou(gt, pred + [B], 128) < base


def test_image_iou_symmetric_disjoint():
    assert image_iou([A], [B], 64) == image_iou([B], [A], 64) == 0.0


def test_pixel_error_examples():
    lab = [(A, Label.WALL), (B, Label.FLOOR)]
    assert pixel_error(lab, lab, 64) == 0.0
    full = [(rect(0, 0, 1, 1), Label.WALL)]
    assert pixel_error(full, [], 32) == 1.0


def test_pixel_error_flipped_label():
    R = 100
    lab = [(rect(0, 0, 1, 0.5), Label.WALL), (rect(0, 0.5, 1, 1), Label.FLOOR), (A, Label.CEILING)]
    flipped = list(lab)
    flipped[2] = (A, Label.FLOOR)
    # A is painted last (smallest), so all of its pixels are visible
    expected = rasterize(A, R).count / R**2
    assert pixel_error(lab, flipped, R) == pytest.approx(expected)


def test_label_map_paints_smaller_on_top():
    m = label_map([(A, Label.CEILING), (rect(0, 0, 1, 1), Label.WALL)], 20)
    assert m[5, 5] == Label.CEILING and m[19, 19] == Label.WALL


def _ap_setup(flags, n_gt):
    # gt: n_gt disjoint squares in one image; dets ranked by falling score
    gts = [rect(0.05 + 0.3 * i, 0.1, 0.25 + 0.3 * i, 0.3) for i in range(n_gt)]
    dets, next_gt = [], 0
    for r, hit in enumerate(flags):
        score = 0.9 - 0.1 * r
        if hit:
            dets.append(det(gts[next_gt], score))
            next_gt += 1
        else:
            dets.append(det(rect(0.1, 0.7, 0.2, 0.9), score))
    return {0: dets}, {0: [(g, Label.WALL) for g in gts]}


def test_ap_perfect():
    d, g = _ap_setup([True, True], 2)
    assert polygon_ap(d, g, Label.WALL, 0.5, 64) == 1.0


def test_ap_no_detections():
    _, g = _ap_setup([], 2)
    assert polygon_ap({}, g, Label.WALL, 0.5, 64) == 0.0


def test_ap_tp_fp_tp():
    d, g = _ap_setup([True, False, True], 2)
    assert polygon_ap(d, g, "wall", 0.5, 64) == pytest.approx(5 / 6, abs=1e-12)


def test_ap_vacuous_classes():
    d, g = _ap_setup([True], 1)
    assert polygon_ap(d, g, Label.FLOOR, 0.5, 64) == 1.0
    stray = {0: [det(A, 0.8, Label.FLOOR)]}
    assert polygon_ap(stray, g, Label.FLOOR, 0.5, 64) == 0.0


def test_ap_one_detection_per_gt():
    d, g = _ap_setup([True], 1)
    d[0].append(det(g[0][0][0], 0.5))  # duplicate of the same gt
    assert polygon_ap(d, g, Label.WALL, 0.5, 64) == pytest.approx(1.0)
    d[0].insert(0, det(g[0][0][0], 0.95))
    # duplicates ranked after the TP are FPs that do not lower the envelope at recall 1
    assert polygon_ap(d, g, Label.WALL, 0.5, 64) == 1.0


def test_ap_gamma_validation():
    with pytest.raises(ValueError):
        polygon_ap({}, {}, Label.WALL, 0.0)


def test_gammas():
    assert len(GAMMAS) == 10 and GAMMAS[0] == 0.5 and GAMMAS[-1] == 0.95


def _partial(width, R):
    gt = rect(0, 0, 1, 1)
    pred = rect(0, 0, width, 1)
    assert iou_matrix([gt], [pred], R)[0, 0] == width
    return {0: [det(pred)]}, {0: [(gt, Label.WALL)]}


def test_mean_pap_iou_07():
    d, g = _partial(0.7, 10)
    out = mean_pap(d, g, 10)
    # thresholds 0.50 .. 0.70 pass: five of ten
    assert out["pap_m"]["wall"] == pytest.approx(0.5)
    assert out["pap_gamma"]["wall"][0.7] == 1.0 and out["pap_gamma"]["wall"][0.75] == 0.0


def test_mean_pap_iou_075():
    d, g = _partial(0.75, 20)
    assert mean_pap(d, g, 20)["pap_m"]["wall"] == pytest.approx(0.6)


def test_mean_pap_perfect_and_empty():
    d, g = _ap_setup([True, True], 2)
    out = mean_pap(d, g, 64)
    assert out["mpap_m"] == 1.0
    assert mean_pap({}, {}, 64)["mpap_m"] == 1.0


@pytest.mark.parametrize("seed", range(5))
def test_ap_nonincreasing_in_gamma(seed):
    rng = np.random.default_rng(seed)
    gts, dets = {}, {}
    for img in range(3):
        g, d = [], []
        for _ in range(3):
            x, y = rng.uniform(0, 0.6, 2)
            g.append((rect(x, y, x + 0.3, y + 0.3), Label.WALL))
            dx, dy = rng.normal(0, 0.04, 2)
            x2, y2 = np.clip([x + dx, y + dy], 0, 0.7)
            d.append(det(rect(x2, y2, x2 + 0.3, y2 + 0.3), float(rng.uniform(0.5, 1))))
        gts[img], dets[img] = g, d
    table = mean_pap(dets, gts, 64)["pap_gamma"]["wall"]
    vals = [table[gm] for gm in GAMMAS]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    # a spurious detection never helps
    dets[0] = dets[0] + [det(rect(0.95, 0.95, 1, 1), 0.99)]
    worse = mean_pap(dets, gts, 64)["pap_gamma"]["wall"]
    assert all(worse[gm] <= table[gm] + 1e-12 for gm in GAMMAS)


def test_nms_identical():
    assert nms_indices([det(A, 0.9), det(A, 0.8)], resolution=64) == [0]


def test_nms_disjoint():
    assert nms_indices([det(A, 0.9), det(B, 0.8)], resolution=64) == [0, 1]


def test_nms_chain_literal_rule():
    a = rect(0.0, 0.1, 0.4, 0.4)
    b = rect(0.3, 0.1, 0.7, 0.4)
    c = rect(0.6, 0.1, 1.0, 0.4)
    dets = [det(a, 0.9), det(b, 0.8), det(c, 0.7)]
    assert iou_matrix([a], [c], 100)[0, 0] == 0
    kept = nms(dets, resolution=100)
    assert kept == [dets[0]]


def test_nms_threshold_monotone():
    rng = np.random.default_rng(0)
    dets = []
    for _ in range(8):
        x, y = rng.uniform(0, 0.6, 2)
        dets.append(det(rect(x, y, x + 0.35, y + 0.35), float(rng.uniform(0.5, 1))))
    prev = None
    for th in (0.0, 0.05, 0.2, 0.5, 0.9):
        kept = set(nms_indices(dets, th, 64))
        if prev is not None:
            assert prev <= kept
        prev = kept


def test_nms_equal_scores_kept():
    assert nms_indices([det(A, 0.9), det(A, 0.9)], resolution=32) == [0, 1]


def _dataset():
    gts = {
        "a": [(rect(0, 0, 1, 0.6), Label.WALL), (rect(0, 0.6, 1, 1), Label.FLOOR)],
        "b": [(rect(0, 0, 0.5, 1), Label.WALL), (rect(0.5, 0, 1, 1), Label.WALL)],
    }
    dets = {
        "a": [det(rect(0, 0, 1, 0.6), 0.9), det(rect(0, 0.6, 1, 1), 0.8, Label.FLOOR)],
        "b": [det(rect(0, 0, 0.5, 1), 0.7), det(rect(0.5, 0, 1, 1), 0.6)],
    }
    return gts, dets


def test_evaluate_perfect():
    gts, dets = _dataset()
    rep = evaluate(gts, dets, resolution=64)
    assert rep.eps_iou_mean == 1.0 and rep.eps_pe_mean == 0.0
    assert rep.mpap_m == 1.0
    assert [r.image_id for r in rep.per_image] == ["a", "b"]


def test_evaluate_drops_background_and_runs_nms():
    gts, dets = _dataset()
    dets["a"] = dets["a"] + [
        ScoredDetection(rect(0, 0, 0.3, 0.3), (0.9, 0.1, 0, 0)),
        det(rect(0, 0, 1, 0.6), 0.5),  # duplicate, suppressed
    ]
    rep = evaluate(gts, dets, resolution=64)
    assert rep.eps_iou_mean == 1.0
    assert rep.per_image[0].K == 2


def test_evaluate_parallel_matches_serial():
    gts, dets = _dataset()
    dets["b"] = [det(rect(0, 0, 0.45, 0.9), 0.7)]
    a = evaluate(gts, dets, resolution=64, workers=1).to_dict()
    b = evaluate(gts, dets, resolution=64, workers=4).to_dict()
    assert a == b


def test_report_round_trip():
    gts, dets = _dataset()
    dets["b"] = [det(rect(0, 0, 0.45, 0.9), 0.7)]
    rep = evaluate(gts, dets, resolution=64)
    d = rep.to_dict()
    assert EvalReport.from_dict(d).to_dict() == d
    assert set(d["ap"]["pap_gamma"]["wall"]) == {f"{g:.2f}" for g in GAMMAS}
    assert "mpAP^m" in rep.table()
