"""
Layout metrics, polygon AP and NMS
==================================

Layout IoU maps ground truth to detections greedily from the largest gt
polygon down.  Pixel error compares label maps.  Polygon AP ranks
detections per class.
"""

# %%
from wirepoly.evaluation import ScoredDetection, evaluate, image_iou, nms, pixel_error
from wirepoly.geometry import Polygon
from wirepoly.scene import Label


def rect(x0, y0, x1, y1):
    return Polygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


wall, floor = rect(0, 0, 1, 0.6), rect(0, 0.6, 1, 1)

# %%
# One extra detection that overlaps nothing grows the denominator.
print(image_iou([wall], [wall], 64), image_iou([wall], [wall, floor], 64))

# %%
# A flipped label costs exactly the pixels of that polygon.
print(pixel_error([(wall, Label.WALL), (floor, Label.FLOOR)],
                  [(wall, Label.WALL), (floor, Label.CEILING)], 100))

# %%
# NMS drops a detection if any higher-scoring detection overlaps it, even
# one that was itself dropped.  In a chain A > B > C only A survives.
a, b, c = rect(0.0, 0.1, 0.4, 0.4), rect(0.3, 0.1, 0.7, 0.4), rect(0.6, 0.1, 1.0, 0.4)
dets = [ScoredDetection(p, (1 - s, s, 0, 0)) for p, s in ((a, 0.9), (b, 0.8), (c, 0.7))]
print(len(nms(dets, 0.05, 100)))

# %%
# ``evaluate`` runs NMS and every metric over a dataset.
gts = {"room": [(wall, Label.WALL), (floor, Label.FLOOR)]}
preds = {"room": [ScoredDetection(wall, (0, 1, 0, 0)), ScoredDetection(rect(0, 0.65, 1, 1), (0, 0, 1, 0))]}
report = evaluate(gts, preds, resolution=128)
print(report.table())
