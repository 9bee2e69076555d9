import xml.etree.ElementTree as ET

from wirepoly.evaluation import ScoredDetection
from wirepoly.geometry import Polygon
from wirepoly.render import LABEL_COLORS, render_svg
from wirepoly.scene import Label
from wirepoly.synthetic import random_room_scene

NS = {"svg": "http://www.w3.org/2000/svg"}


def _parse(text):
    return ET.fromstring(text.encode("utf-8"))


def test_empty_scene_has_only_legend():
    root = _parse(render_svg())
    assert root.findall(".//svg:polygon", NS) == []
    assert root.findall(".//svg:line", NS) == []
    texts = [t.text for t in root.findall(".//svg:g[@id='legend']/svg:text", NS)]
    assert texts == ["wall", "floor", "ceiling"]


def test_polygon_count_matches_input():
    scene = random_room_scene(2)
    dets = [
        ScoredDetection(Polygon(((0.1, 0.1), (0.4, 0.1), (0.2, 0.3))), (0.0, 0.0, 1.0, 0.0)),
        ScoredDetection(Polygon(((0.5, 0.5), (0.9, 0.5), (0.7, 0.9))), (0.7, 0.1, 0.1, 0.1)),
    ]
    root = _parse(render_svg(scene, dets))
    polys = root.findall(".//svg:polygon", NS)
    assert len(polys) == len(scene.planes) + len(dets)
    assert len(root.findall(".//svg:line", NS)) == len(scene.lines)
    assert len(root.findall(".//svg:circle", NS)) == len(scene.junctions)
    pred = [p for p in polys if "pred" in p.get("class")]
    assert pred[0].get("fill") == LABEL_COLORS[Label.FLOOR]
    assert pred[1].get("class") == "plane pred background"


def test_byte_identical():
    scene = random_room_scene(7)
    assert render_svg(scene, size=300) == render_svg(scene, size=300)


def test_title_escaped():
    root = _parse(render_svg(title="a < b & c"))
    assert root.find("svg:title", NS).text == "a < b & c"
