"""Command-line interface: segment, train, detect, track.

Every flag default is the reference configuration (segmentation
threshold 28, learning rate 0.6, momentum 0.7, 200 epochs, decision
threshold 0.5, 320x240 view), so runs that only pass file paths reproduce
it. All stdout lines are machine-parseable ``key=value`` pairs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import datasets, pantilt
from .detector import detect, scores_to_csv
from .errors import ConfigError, DatasetError, ModelFormatError, PpmParseError
from .frames import false_colour, load_ppm, save_ppm
from .mlp import TrainConfig, init_mlp, load_model, save_model, train
from .segmentation import labels_to_csv, region_stats, segment


def _eta(text: str) -> int:
    value = int(text)
    if not 0 <= value <= 256:
        raise argparse.ArgumentTypeError(f"eta must be in [0, 256], got {value}")
    return value


def _rho(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"rho must be in (0, 1), got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _momentum(text: str) -> float:
    value = float(text)
    if not 0 <= value < 1:
        raise argparse.ArgumentTypeError(f"momentum must be in [0, 1), got {value}")
    return value


def _limits(text: str):
    try:
        lo_text, hi_text = text.split(":")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"limits must be MIN:MAX, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"limits {lo}:{hi} are inverted")
    return (lo, hi)


def _read_frame(path: str):
    return load_ppm(Path(path).read_bytes())


def cmd_segment(args) -> int:
    frame = _read_frame(args.input)
    seg = segment(frame, args.eta)
    if args.labels:
        Path(args.labels).write_text(labels_to_csv(seg), encoding="ascii")
    if args.falsecolor:
        Path(args.falsecolor).write_bytes(save_ppm(false_colour(seg)))
    print(f"regions={seg.region_count}")
    return 0


def cmd_train(args) -> int:
    cfg = TrainConfig(
        learning_rate=args.lr, momentum=args.momentum, epochs=args.epochs, seed=args.seed
    )
    base = datasets.read_samples_csv(Path(args.samples).read_text(encoding="ascii"))
    meta = {
        "learning_rate": cfg.learning_rate,
        "momentum": cfg.momentum,
        "epochs": cfg.epochs,
        "seed": cfg.seed,
    }
    if args.negatives:
        negatives = datasets.read_samples_csv(Path(args.negatives).read_text(encoding="ascii"))
        samples = datasets.interleave_classes(base, negatives)
    elif args.gen_negatives is not None:
        positives = [s for s in base if s.target == 1]
        negatives = datasets.generate_negatives(positives, args.gen_negatives, args.seed + 1)
        meta["negatives_seed"] = args.seed + 1
        samples = datasets.interleave_classes(base, negatives)
    else:
        samples = base

    meta["samples"] = len(samples)
    meta["positives"] = sum(1 for s in samples if s.target == 1)
    meta["negatives"] = sum(1 for s in samples if s.target == 0)

    net, history = train(init_mlp(cfg.seed), samples, cfg)
    Path(args.model).write_bytes(save_model(net, rho=args.rho, meta=meta))
    print(f"samples={len(samples)}")
    print(f"mse_first={history[0]!r}")
    print(f"mse_last={history[-1]!r}")
    return 0


def cmd_detect(args) -> int:
    frame = _read_frame(args.input)
    model = load_model(Path(args.model).read_bytes())
    rho = model.rho if args.rho is None else args.rho
    det = detect(frame, args.eta, model.net, rho, min_region=args.min_region)
    if args.mask:
        mask_frame = frame.copy()
        mask_frame.data[:] = 0
        mask_frame.data[det.mask] = 255
        Path(args.mask).write_bytes(save_ppm(mask_frame))
    if args.scores:
        stats = region_stats(segment(frame, args.eta), frame)
        Path(args.scores).write_text(scores_to_csv(det, stats), encoding="ascii")
    if det.centroid is None:
        print("centroid=none")
    else:
        print(f"centroid={det.centroid[0]!r},{det.centroid[1]!r}")
    return 0


def cmd_track(args) -> int:
    world_frame = _read_frame(args.world)
    model = load_model(Path(args.model).read_bytes())
    rho = model.rho if args.rho is None else args.rho
    waypoints = pantilt.parse_script_csv(Path(args.script).read_text(encoding="ascii"))
    targets = pantilt.targets_from_waypoints(waypoints, datasets.skin_palette())

    view_w, view_h = 320, 240
    if world_frame.width < view_w or world_frame.height < view_h:
        raise ConfigError(
            f"world image {world_frame.width}x{world_frame.height} is smaller "
            f"than the {view_w}x{view_h} view"
        )
    home = ((world_frame.width - view_w) // 2, (world_frame.height - view_h) // 2)
    if args.limits is not None:
        pan_limits = tilt_limits = args.limits
    else:
        pan_limits = (-(home[0] // args.gain), (world_frame.width - view_w - home[0]) // args.gain)
        tilt_limits = (-(home[1] // args.gain), (world_frame.height - view_h - home[1]) // args.gain)

    world = pantilt.World(
        image=world_frame, home=home, view_w=view_w, view_h=view_h, targets=targets
    )
    state0 = pantilt.PanTiltState(
        pan_limits=pan_limits,
        tilt_limits=tilt_limits,
        pixels_per_step=args.gain,
        deadband=args.deadband,
    )
    rows = pantilt.run_tracking(world, model.net, args.eta, rho, state0, args.frames)
    Path(args.trace).write_text(pantilt.trace_to_csv(rows), encoding="ascii")

    if args.dump_frames:
        dump_dir = Path(args.dump_frames)
        dump_dir.mkdir(parents=True, exist_ok=True)
        state = state0
        for row in rows:
            view = pantilt.render_view(world, state, row.frame_index)
            (dump_dir / f"frame_{row.frame_index:05d}.ppm").write_bytes(save_ppm(view))
            state = replace(state, pan_steps=row.pan_steps, tilt_steps=row.tilt_steps)

    at = pantilt.converged_at(rows, state0)
    print(f"converged_at={'never' if at is None else at}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skintrack",
        description="Skin-colour region tracking pipeline: segmentation, "
        "MLP classification, centroid tracking, pan/tilt simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser(
        "segment",
        formatter_class=fmt,
        help="label the regions of a PPM frame",
        description="Region-growing segmentation; prints regions=<count>.",
    )
    p.add_argument("--input", required=True, help="input frame (binary PPM)")
    p.add_argument("--eta", type=_eta, default=28, help="similarity threshold in [0, 256]")
    p.add_argument("--labels", help="write the label map as x,y,label CSV")
    p.add_argument("--falsecolor", help="write a false-colour PPM of the label map")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser(
        "train",
        formatter_class=fmt,
        help="train the 3-3-1 skin classifier",
        description="Online backpropagation with momentum; prints sample "
        "count and first/last epoch MSE. Weight init uses --seed; generated "
        "negatives use --seed + 1.",
    )
    p.add_argument("--samples", required=True, help="sample CSV (header r,g,b,label)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--negatives", help="extra negative samples CSV, spread through the pass")
    group.add_argument(
        "--gen-negatives",
        type=_nonneg_int,
        metavar="N",
        help="generate N negatives away from the positive samples",
    )
    p.add_argument("--model", required=True, help="output model JSON path")
    p.add_argument("--lr", type=_positive_float, default=0.6, help="learning rate")
    p.add_argument("--momentum", type=_momentum, default=0.7, help="momentum factor in [0, 1)")
    p.add_argument("--epochs", type=_positive_int, default=200, help="training epochs")
    p.add_argument("--seed", type=int, default=108, help="weight-initialisation seed")
    p.add_argument("--rho", type=_rho, default=0.5, help="decision threshold stored in the model")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser(
        "detect",
        formatter_class=fmt,
        help="detect skin regions in one frame",
        description="Segment, score regions, mask skin; prints "
        "centroid=<mu_x>,<mu_y> or centroid=none.",
    )
    p.add_argument("--input", required=True, help="input frame (binary PPM)")
    p.add_argument("--model", required=True, help="model JSON from 'train'")
    p.add_argument("--eta", type=_eta, default=28, help="similarity threshold in [0, 256]")
    p.add_argument(
        "--rho", type=_rho, default=None, help="decision threshold (default: value in the model)"
    )
    p.add_argument("--mask", help="write the skin mask as PPM (white = skin)")
    p.add_argument("--scores", help="write per-region scores CSV")
    p.add_argument(
        "--min-region", type=_positive_int, default=1, help="minimum region size in pixels"
    )
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser(
        "track",
        formatter_class=fmt,
        help="run the closed-loop pan/tilt tracking simulation",
        description="Simulate a 320x240 pan/tilt view over a world image with "
        "scripted disc targets; writes the trace CSV and prints "
        "converged_at=<frame|never>. The view homes at the world centre; "
        "default limits are the largest that keep every window inside the world.",
    )
    p.add_argument("--world", required=True, help="world image (binary PPM, at least 320x240)")
    p.add_argument("--script", required=True, help="motion script CSV (frame,target_id,x,y)")
    p.add_argument("--model", required=True, help="model JSON from 'train'")
    p.add_argument("--frames", type=_positive_int, required=True, help="number of frames to simulate")
    p.add_argument("--trace", required=True, help="output trace CSV path")
    p.add_argument("--eta", type=_eta, default=28, help="similarity threshold in [0, 256]")
    p.add_argument(
        "--rho", type=_rho, default=None, help="decision threshold (default: value in the model)"
    )
    p.add_argument("--gain", type=_positive_int, default=4, help="view pixels per step")
    p.add_argument("--deadband", type=_nonneg_int, default=4, help="no-step displacement band, pixels")
    p.add_argument(
        "--limits", type=_limits, default=None, metavar="MIN:MAX",
        help="step limits applied to both axes; write --limits=-40:40 for "
        "negative minima (default: fit the world)",
    )
    p.add_argument("--dump-frames", metavar="DIR", help="write every rendered view as PPM into DIR")
    p.set_defaults(func=cmd_track)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PpmParseError, ModelFormatError, DatasetError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
