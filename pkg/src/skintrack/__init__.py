"""Skin-colour region tracking: segmentation, MLP classification, and a
pan/tilt camera simulator."""

from .datasets import (
    bundled_skin_samples,
    generate_negatives,
    interleave_classes,
    read_samples_csv,
    skin_palette,
    write_samples_csv,
)
from .detector import Detection, centroid, detect, scores_to_csv
from .errors import ConfigError, DatasetError, ModelFormatError, PpmParseError
from .frames import Frame, false_colour, label_colour, load_ppm, save_ppm
from .mlp import (
    Gradients,
    Mlp,
    ModelFile,
    SkinSample,
    TrainConfig,
    classify,
    forward,
    gradient,
    init_mlp,
    load_model,
    save_model,
    train,
)
from .pantilt import (
    PanTiltState,
    Target,
    TraceRow,
    World,
    converged_at,
    displacement,
    parse_script_csv,
    render_view,
    run_tracking,
    step,
    targets_from_waypoints,
    trace_to_csv,
    validate_world,
)
from .rng import SplitMix64
from .segmentation import RegionStats, Segmentation, labels_to_csv, region_stats, segment

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DatasetError",
    "Detection",
    "Frame",
    "Gradients",
    "Mlp",
    "ModelFile",
    "ModelFormatError",
    "PanTiltState",
    "PpmParseError",
    "RegionStats",
    "Segmentation",
    "SkinSample",
    "SplitMix64",
    "Target",
    "TraceRow",
    "TrainConfig",
    "World",
    "bundled_skin_samples",
    "centroid",
    "classify",
    "converged_at",
    "detect",
    "displacement",
    "false_colour",
    "forward",
    "generate_negatives",
    "gradient",
    "init_mlp",
    "interleave_classes",
    "label_colour",
    "labels_to_csv",
    "load_model",
    "load_ppm",
    "parse_script_csv",
    "read_samples_csv",
    "region_stats",
    "render_view",
    "run_tracking",
    "save_model",
    "save_ppm",
    "scores_to_csv",
    "segment",
    "skin_palette",
    "step",
    "targets_from_waypoints",
    "trace_to_csv",
    "train",
    "validate_world",
    "write_samples_csv",
]
