"""Region-growing segmentation with a seed-referenced similarity threshold.

Pixels are scanned left-to-right, top-to-bottom; each unlabelled pixel
seeds a new region which then grows breadth-first through its
4-neighbours. A neighbour joins iff it is still unlabelled and every
channel differs from the *seed* pixel by strictly less than ``eta``
(maximum per-channel absolute difference, i.e. Chebyshev distance in RGB).
Comparing against the fixed seed rather than the adjacent pixel prevents
regions from drifting across smooth gradients.

Each pixel enters the work list at most once, so the labelling runs in
time linear in the pixel count; ``Segmentation.worklist_insertions``
exposes the insertion counter for verification.

The hot loop is deliberately plain Python over flat channel lists: it
meets the per-frame time budget and its per-pixel cost is stable across
frame sizes, which is what the linear-time check measures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .frames import Frame


@dataclass
class RegionStats:
    """Aggregate statistics of one region."""

    label: int
    pixel_count: int
    mean_rgb: tuple  # per-channel means, exact integer sums divided once
    bbox: tuple  # (min_x, min_y, max_x, max_y), inclusive
    seed: tuple  # (x, y) of the region's seed pixel


@dataclass(eq=False)
class Segmentation:
    """A total partition of a frame into 4-connected regions.

    ``labels`` is a (height, width) int32 array holding region ids
    1..region_count, numbered in order of seed encounter during the scan.
    ``seeds[i]`` is the (x, y) seed pixel of region i+1.
    """

    width: int
    height: int
    labels: np.ndarray
    region_count: int
    seeds: list
    worklist_insertions: int

    def __eq__(self, other):
        if not isinstance(other, Segmentation):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.region_count == other.region_count
            and self.seeds == other.seeds
            and np.array_equal(self.labels, other.labels)
        )


def segment(frame: Frame, eta: int) -> Segmentation:
    """Label every pixel of ``frame`` using threshold ``eta`` in [0, 256].

    The comparison is strict (``< eta``), so eta = 0 yields one region per
    pixel and eta = 256 merges everything 4-connected.
    """
    if not isinstance(eta, int) or not 0 <= eta <= 256:
        raise ValueError(f"eta must be an integer in [0, 256], got {eta!r}")
    w = frame.width
    h = frame.height
    n = w * h
    data = frame.data.reshape(-1, 3)
    r = data[:, 0].tolist()
    g = data[:, 1].tolist()
    b = data[:, 2].tolist()

    labels = [0] * n
    seeds = []
    insertions = 0
    k = 0
    queue = deque()
    push = queue.append
    pop = queue.popleft

    for idx in range(n):
        if labels[idx]:
            continue
        k += 1
        seeds.append((idx % w, idx // w))
        sr = r[idx]
        sg = g[idx]
        sb = b[idx]
        labels[idx] = k
        push(idx)
        insertions += 1
        while queue:
            j = pop()
            x = j % w
            if x > 0:
                m = j - 1
                if not labels[m] and -eta < r[m] - sr < eta and -eta < g[m] - sg < eta and -eta < b[m] - sb < eta:
                    labels[m] = k
                    push(m)
                    insertions += 1
            if x < w - 1:
                m = j + 1
                if not labels[m] and -eta < r[m] - sr < eta and -eta < g[m] - sg < eta and -eta < b[m] - sb < eta:
                    labels[m] = k
                    push(m)
                    insertions += 1
            if j >= w:
                m = j - w
                if not labels[m] and -eta < r[m] - sr < eta and -eta < g[m] - sg < eta and -eta < b[m] - sb < eta:
                    labels[m] = k
                    push(m)
                    insertions += 1
            m = j + w
            if m < n:
                if not labels[m] and -eta < r[m] - sr < eta and -eta < g[m] - sg < eta and -eta < b[m] - sb < eta:
                    labels[m] = k
                    push(m)
                    insertions += 1

    label_array = np.array(labels, dtype=np.int32).reshape(h, w)
    return Segmentation(w, h, label_array, k, seeds, insertions)


def region_stats(segmentation: Segmentation, frame: Frame) -> list:
    """Per-region statistics, ordered by label.

    Channel means are exact: integer channel sums (every partial sum is an
    integer below 2^53, hence exact in float64) divided once by the count.
    """
    if (segmentation.width, segmentation.height) != (frame.width, frame.height):
        raise ValueError(
            f"segmentation is {segmentation.width}x{segmentation.height} "
            f"but frame is {frame.width}x{frame.height}"
        )
    k = segmentation.region_count
    flat = segmentation.labels.ravel()
    counts = np.bincount(flat, minlength=k + 1)
    sums = [
        np.bincount(flat, weights=frame.data[:, :, c].ravel().astype(np.float64), minlength=k + 1)
        for c in range(3)
    ]

    ys, xs = np.indices((segmentation.height, segmentation.width))
    xs = xs.ravel()
    ys = ys.ravel()
    min_x = np.full(k + 1, segmentation.width, dtype=np.int64)
    max_x = np.full(k + 1, -1, dtype=np.int64)
    min_y = np.full(k + 1, segmentation.height, dtype=np.int64)
    max_y = np.full(k + 1, -1, dtype=np.int64)
    np.minimum.at(min_x, flat, xs)
    np.maximum.at(max_x, flat, xs)
    np.minimum.at(min_y, flat, ys)
    np.maximum.at(max_y, flat, ys)

    stats = []
    for label in range(1, k + 1):
        count = int(counts[label])
        mean = tuple(float(sums[c][label]) / count for c in range(3))
        bbox = (int(min_x[label]), int(min_y[label]), int(max_x[label]), int(max_y[label]))
        stats.append(
            RegionStats(
                label=label,
                pixel_count=count,
                mean_rgb=mean,
                bbox=bbox,
                seed=segmentation.seeds[label - 1],
            )
        )
    return stats


def labels_to_csv(segmentation: Segmentation) -> str:
    """Label map as CSV text: header ``x,y,label``, then one row per pixel
    in scan order."""
    lines = ["x,y,label"]
    flat = segmentation.labels.ravel()
    w = segmentation.width
    for i, label in enumerate(flat.tolist()):
        lines.append(f"{i % w},{i // w},{label}")
    return "\n".join(lines) + "\n"
