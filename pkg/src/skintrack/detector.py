"""Per-frame skin detection: segment, score each region's mean colour,
mask the skin regions, take the centroid of the skin pixels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import Frame
from .mlp import Mlp, forward
from .segmentation import region_stats, segment


@dataclass(eq=False)
class Detection:
    """Result of one frame: which regions are skin, where they are,
    and the mean position of all skin pixels.

    ``scores`` maps every region label to its network activation;
    ``centroid`` is None when no pixel is skin, otherwise (mu_x, mu_y) in
    pixel coordinates (origin top-left, x rightward, y downward).
    """

    skin_labels: list
    skin_pixel_count: int
    mask: np.ndarray  # (height, width) bool
    centroid: tuple | None
    scores: dict


def centroid(mask: np.ndarray):
    """Mean (x, y) over true cells of a boolean grid, or None if all false.

    Coordinate sums are exact int64 totals divided once per axis.
    """
    ys, xs = np.nonzero(mask)
    if len(xs) == 0:
        return None
    count = len(xs)
    return (float(int(xs.sum())) / count, float(int(ys.sum())) / count)


def detect(frame: Frame, eta: int, net: Mlp, rho: float, min_region: int = 1) -> Detection:
    """Run the full pipeline on one frame.

    A region is skin iff its mean-colour activation strictly exceeds
    ``rho`` and it has at least ``min_region`` pixels. The mask is true
    exactly at pixels of skin regions, and the centroid is the arithmetic
    mean of their coordinates.
    """
    seg = segment(frame, eta)
    stats = region_stats(seg, frame)
    scores = {}
    skin_labels = []
    for st in stats:
        score = forward(net, st.mean_rgb)
        scores[st.label] = score
        if score > rho and st.pixel_count >= min_region:
            skin_labels.append(st.label)

    is_skin = np.zeros(seg.region_count + 1, dtype=bool)
    is_skin[skin_labels] = True
    mask = is_skin[seg.labels]
    return Detection(
        skin_labels=skin_labels,
        skin_pixel_count=int(mask.sum()),
        mask=mask,
        centroid=centroid(mask),
        scores=scores,
    )


def scores_to_csv(detection: Detection, stats) -> str:
    """Region score table as CSV:
    ``label,pixels,mean_r,mean_g,mean_b,score,is_skin``."""
    skin = set(detection.skin_labels)
    lines = ["label,pixels,mean_r,mean_g,mean_b,score,is_skin"]
    for st in stats:
        mr, mg, mb = st.mean_rgb
        lines.append(
            f"{st.label},{st.pixel_count},{mr!r},{mg!r},{mb!r},"
            f"{detection.scores[st.label]!r},{int(st.label in skin)}"
        )
    return "\n".join(lines) + "\n"
