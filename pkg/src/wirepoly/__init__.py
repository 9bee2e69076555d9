"""Room-layout polygon detection from wireframes: the non-neural core.

Polygon enumeration over cycle bases, greedy minimum-average-weight
proposals, bounded matchings and losses, polygon NMS and the 2D layout
metrics, plus synthetic wireframes and SVG output.
"""

from .enumeration import (
    EnumerationLimits,
    LimitExceeded,
    enumerate_cycles,
    enumerate_polygons,
    sample_polygons,
    xor_compose,
)
from .evaluation import (
    GAMMAS,
    EvalReport,
    ScoredDetection,
    evaluate,
    image_iou,
    layout_mapping,
    mean_pap,
    nms,
    pixel_error,
    polygon_ap,
)
from .geometry import (
    GeometryError,
    PixelMask,
    Point2,
    Polygon,
    polygon_area,
    polygon_centroid,
    polygon_iou,
    polygon_is_simple,
    rasterize,
)
from .graph import (
    Cycle,
    Junction,
    JunctionKind,
    LineSegment,
    PlaneGraph,
    Wireframe,
    WireframeError,
    build_graph,
    connected_subgraphs,
    cycle_basis,
)
from .matching import (
    LossConfig,
    MatchResult,
    classification_loss,
    line_distance,
    match_centroids,
    match_lines,
    proposal_loss,
)
from .optimizer import (
    Proposal,
    ProposalConfig,
    WeightedGraph,
    min_avg_weight_polygon,
    propose_all,
    propose_polygon,
)
from .scene import Label, Plane, PlaneAnnotation, Scene, scene_from_polygons
from .synthetic import (
    SynthConfig,
    anchor_grid,
    generate_synthetic,
    oracle_class_scores,
    oracle_scores,
    random_room_scene,
)

__all__ = [
    "EnumerationLimits",
    "LimitExceeded",
    "enumerate_cycles",
    "enumerate_polygons",
    "sample_polygons",
    "xor_compose",
    "GAMMAS",
    "EvalReport",
    "ScoredDetection",
    "evaluate",
    "image_iou",
    "layout_mapping",
    "mean_pap",
    "nms",
    "pixel_error",
    "polygon_ap",
    "GeometryError",
    "PixelMask",
    "Point2",
    "Polygon",
    "polygon_area",
    "polygon_centroid",
    "polygon_iou",
    "polygon_is_simple",
    "rasterize",
    "Cycle",
    "Junction",
    "JunctionKind",
    "LineSegment",
    "PlaneGraph",
    "Wireframe",
    "WireframeError",
    "build_graph",
    "connected_subgraphs",
    "cycle_basis",
    "LossConfig",
    "MatchResult",
    "classification_loss",
    "line_distance",
    "match_centroids",
    "match_lines",
    "proposal_loss",
    "Proposal",
    "ProposalConfig",
    "WeightedGraph",
    "min_avg_weight_polygon",
    "propose_all",
    "propose_polygon",
    "Label",
    "Plane",
    "PlaneAnnotation",
    "Scene",
    "scene_from_polygons",
    "SynthConfig",
    "anchor_grid",
    "generate_synthetic",
    "oracle_class_scores",
    "oracle_scores",
    "random_room_scene",
]

__version__ = "0.1.0"
