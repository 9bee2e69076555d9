"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .enumeration import EnumerationLimits, LimitExceeded, enumerate_cycles
from .evaluation import evaluate
from .geometry import GeometryError
from .graph import WireframeError, build_graph, connected_subgraphs
from .io import InputError
from .optimizer import ProposalConfig, propose_all
from .render import render_svg
from .synthetic import SynthConfig, anchor_grid, generate_synthetic, oracle_scores

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2


def _unit_interval(text):
    x = float(text)
    if not 0.0 < x < 1.0:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {text}")
    return x


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return n


def _nonneg_float(text):
    x = float(text)
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return x


def _probability(text):
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return x


def cmd_enumerate(args) -> int:
    scene = io.load_scene(args.scene)
    graph = build_graph(scene.wireframe)
    pos = scene.wireframe.positions
    limits = EnumerationLimits(args.max_polygons, args.max_subset_size)
    found = []
    try:
        for comp in connected_subgraphs(graph):
            for cyc in enumerate_cycles(comp, pos, limits):
                found.append((cyc, cyc.polygon(pos)))
                if len(found) > args.max_polygons:
                    raise LimitExceeded("too many polygons", count=len(found))
    except LimitExceeded as exc:
        hint = f" (at least {exc.count})" if exc.count is not None else ""
        print(f"error: {exc}{hint}; raise --max-polygons / --max-subset-size", file=sys.stderr)
        return EXIT_LIMIT
    io.write_json(args.out, io.polygons_to_dict(found))
    return EXIT_OK


def cmd_propose(args) -> int:
    scene = io.load_scene(args.scene)
    wf = scene.wireframe
    if args.oracle:
        per_anchor = oracle_scores(wf, scene, anchor_grid())
    else:
        per_anchor = io.load_scores(args.scores)
        for k, scores in enumerate(per_anchor):
            missing = [l.id for l in wf.lines if l.id not in scores]
            if missing:
                raise InputError(f"{args.scores}: anchor {k} has no score for lines {missing}")
    config = ProposalConfig(args.kappa, args.iterations)
    io.write_json(args.out, io.proposals_to_dict(propose_all(wf, per_anchor, config)))
    return EXIT_OK


def _stems(directory: Path) -> dict[str, Path]:
    if not directory.is_dir():
        raise InputError(f"{directory}: not a directory")
    return {p.stem: p for p in sorted(directory.glob("*.json"))}


def cmd_eval(args) -> int:
    gt_files = _stems(Path(args.gt))
    pred_files = _stems(Path(args.pred))
    if set(gt_files) != set(pred_files):
        only_gt = sorted(set(gt_files) - set(pred_files))
        only_pred = sorted(set(pred_files) - set(gt_files))
        raise InputError(f"file stems differ: only in gt {only_gt}, only in pred {only_pred}")
    gts, dets = {}, {}
    for stem in sorted(gt_files):
        gts[stem] = io.load_scene(gt_files[stem]).labelled_polygons()
        dets[stem] = io.load_detections(pred_files[stem])
    report = evaluate(gts, dets, args.resolution, args.nms_threshold)
    if args.report:
        io.save_report(args.report, report)
    print(report.table())
    return EXIT_OK


def cmd_synth(args) -> int:
    scene = io.load_scene(args.scene)
    config = SynthConfig(args.sigma, args.drop_prob, args.spurious_prob, args.seed)
    io.save_scene(args.out, generate_synthetic(scene, config), include_planes=False)
    return EXIT_OK


def cmd_render(args) -> int:
    scene = io.load_scene(args.scene) if args.scene else None
    dets = io.load_detections(args.pred) if args.pred else []
    Path(args.out).write_text(render_svg(scene, dets, args.size), encoding="utf-8")
    return EXIT_OK


def cmd_convert(args) -> int:
    from .convert import convert_structured3d

    layout = io.read_json(args.layout)
    if not isinstance(layout, dict):
        raise InputError(f"{args.layout}: expected a JSON object")
    try:
        scene, warnings = convert_structured3d(layout, args.width, args.height)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.layout}: cannot convert ({exc})") from exc
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    io.save_scene(args.out, scene)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wirepoly", description="Room-layout polygons from wireframes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate every valid polygon of a scene wireframe")
    p.add_argument("--scene", required=True)
    p.add_argument("--max-polygons", type=_positive_int, default=10000)
    p.add_argument("--max-subset-size", type=_positive_int, default=12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("propose", help="one plane proposal per anchor from line scores")
    p.add_argument("--scene", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scores", help="per-anchor line score file")
    src.add_argument("--oracle", action="store_true", help="derive scores from the scene's planes")
    p.add_argument("--kappa", type=_unit_interval, default=0.5)
    p.add_argument("--iterations", type=_positive_int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_propose)

    p = sub.add_parser("eval", help="evaluate detection files against scene files")
    p.add_argument("--gt", required=True, help="directory of scene files")
    p.add_argument("--pred", required=True, help="directory of detection files with matching stems")
    p.add_argument("--resolution", type=_positive_int, default=512)
    p.add_argument("--nms-threshold", type=_nonneg_float, default=0.05)
    p.add_argument("--report")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="synthetic wireframe from an annotated scene")
    p.add_argument("--scene", required=True)
    p.add_argument("--sigma", type=_nonneg_float, default=0.005)
    p.add_argument("--drop-prob", type=_probability, default=0.0)
    p.add_argument("--spurious-prob", type=_probability, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("render", help="draw a scene and/or detections as SVG")
    p.add_argument("--scene")
    p.add_argument("--pred")
    p.add_argument("--size", type=_positive_int, default=512)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("convert", help="Structured3D perspective layout.json to a scene file")
    p.add_argument("--layout", required=True)
    p.add_argument("--width", type=_positive_int, default=1280)
    p.add_argument("--height", type=_positive_int, default=720)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; those are input errors here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, WireframeError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
