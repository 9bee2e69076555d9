"""SVG drawings of wireframes and labelled plane polygons."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import quoteattr

from .evaluation import ScoredDetection
from .geometry import Polygon
from .graph import Wireframe
from .scene import Label, Scene

__all__ = ["LABEL_COLORS", "render_svg"]

LABEL_COLORS = {
    Label.WALL: "#4c72b0",
    Label.FLOOR: "#55a868",
    Label.CEILING: "#dd8452",
    Label.BACKGROUND: "#8c8c8c",
}


def _num(v: float) -> str:
    # fixed precision keeps output byte-stable
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _points(poly: Polygon, size: int) -> str:
    return " ".join(f"{_num(v.x * size)},{_num(v.y * size)}" for v in poly.vertices)


def render_svg(
    scene: Scene | Wireframe | None = None,
    detections: Sequence[ScoredDetection] = (),
    size: int = 512,
    title: str | None = None,
) -> str:
    """Draw a scene and/or detections as an SVG 1.1 document.

    Annotated planes and detections are filled semi-transparently by label
    (detections by their predicted label, with a dashed outline), lines are
    drawn as strokes and junctions as circles.  A legend is always present.
    """
    legend_h = 24
    h = size + legend_h
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{h}" '
        f'viewBox="0 0 {size} {h}">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff" stroke="#000000"/>')

    planes = []
    if isinstance(scene, Scene):
        planes = [(a.polygon, a.label) for a in scene.plane_annotations()]
    out.append('<g id="planes">')
    for i, (poly, label) in enumerate(planes):
        out.append(
            f'<polygon class="plane gt {label.key}" data-index="{i}" points="{_points(poly, size)}" '
            f'fill="{LABEL_COLORS[label]}" fill-opacity="0.45" stroke="none"/>'
        )
    for i, det in enumerate(detections):
        label = det.predicted_label
        out.append(
            f'<polygon class="plane pred {label.key}" data-index="{i}" '
            f'points="{_points(det.polygon, size)}" fill="{LABEL_COLORS[label]}" '
            f'fill-opacity="0.35" stroke="{LABEL_COLORS[label]}" stroke-dasharray="4 2"/>'
        )
    out.append("</g>")

    if scene is not None:
        pos = {j.id: j.position for j in scene.junctions}
        out.append('<g id="wireframe" stroke="#202020" stroke-width="1.5">')
        for l in scene.lines:
            a, b = pos[l.endpoints[0]], pos[l.endpoints[1]]
            out.append(
                f'<line x1="{_num(a.x * size)}" y1="{_num(a.y * size)}" '
                f'x2="{_num(b.x * size)}" y2="{_num(b.y * size)}"/>'
            )
        out.append("</g>")
        out.append('<g id="junctions" fill="#d62728">')
        for j in scene.junctions:
            fill = "" if j.kind.value == "proper" else ' fill="#ffffff" stroke="#d62728"'
            out.append(
                f'<circle cx="{_num(j.position.x * size)}" cy="{_num(j.position.y * size)}" r="3"{fill}/>'
            )
        out.append("</g>")

    out.append('<g id="legend" font-family="sans-serif" font-size="12">')
    for i, label in enumerate((Label.WALL, Label.FLOOR, Label.CEILING)):
        x = 8 + i * 96
        out.append(
            f'<rect x="{x}" y="{size + 6}" width="12" height="12" fill="{LABEL_COLORS[label]}"/>'
        )
        out.append(f'<text x="{x + 16}" y="{size + 16}">{label.key}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return quoteattr(text)[1:-1]
