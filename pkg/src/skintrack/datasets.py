"""Sample datasets: CSV I/O, the bundled skin palette, negative generation.

The package ships ``data/table2_skin.csv`` with the eight canonical skin
RGB rows (label 1). Because a single-output sigmoid network trained on
positives alone just saturates, training sets are completed with
generated negatives: uniform random RGB triples (SplitMix64 channel
draws, r then g then b per candidate) rejected while within Chebyshev
distance 20 of any positive.
"""

from __future__ import annotations

import csv
import io
from importlib import resources

from .errors import ConfigError, DatasetError
from .mlp import SkinSample
from .rng import SplitMix64

SAMPLES_HEADER = ["r", "g", "b", "label"]

# how far (max per-channel difference) a generated negative must sit
# from every positive
NEGATIVE_MIN_DISTANCE = 20


def read_samples_csv(text: str) -> list:
    """Parse sample rows from CSV text with header ``r,g,b,label``."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError("empty sample CSV") from None
    if [h.strip() for h in header] != SAMPLES_HEADER:
        raise DatasetError(f"expected header {','.join(SAMPLES_HEADER)!r}, got {header!r}")
    samples = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise DatasetError(f"line {lineno}: expected 4 fields, got {len(row)}")
        try:
            r, g, b, label = (int(v) for v in row)
        except ValueError:
            raise DatasetError(f"line {lineno}: non-integer field in {row!r}") from None
        try:
            samples.append(SkinSample(rgb=(r, g, b), target=label))
        except ValueError as exc:
            raise DatasetError(f"line {lineno}: {exc}") from None
    if not samples:
        raise DatasetError("sample CSV contains no rows")
    return samples


def write_samples_csv(samples) -> str:
    lines = [",".join(SAMPLES_HEADER)]
    for s in samples:
        lines.append(f"{s.rgb[0]},{s.rgb[1]},{s.rgb[2]},{s.target}")
    return "\n".join(lines) + "\n"


def bundled_skin_samples() -> list:
    """The eight packaged skin samples (all label 1)."""
    text = resources.files("skintrack").joinpath("data/table2_skin.csv").read_text("ascii")
    return read_samples_csv(text)


def skin_palette() -> list:
    """RGB triples of the bundled skin samples, e.g. for simulated targets."""
    return [s.rgb for s in bundled_skin_samples()]


def generate_negatives(positives, count: int, seed: int) -> list:
    """``count`` non-skin samples drawn uniformly over RGB space,
    re-drawn while within Chebyshev distance NEGATIVE_MIN_DISTANCE of any
    positive. Deterministic for (positives, count, seed)."""
    if count < 0:
        raise ConfigError(f"negative count must be >= 0, got {count}")
    rgbs = [s.rgb for s in positives]
    rng = SplitMix64(seed)
    out = []
    attempts = 0
    limit = 10_000 * max(count, 1)
    while len(out) < count:
        attempts += 1
        if attempts > limit:
            raise ConfigError(
                "negative-sample rejection region covers too much of RGB space"
            )
        r = rng.next_channel()
        g = rng.next_channel()
        b = rng.next_channel()
        if all(
            max(abs(r - pr), abs(g - pg), abs(b - pb)) > NEGATIVE_MIN_DISTANCE
            for pr, pg, pb in rgbs
        ):
            out.append(SkinSample(rgb=(r, g, b), target=0))
    return out


def interleave_classes(positives, negatives) -> list:
    """Merge two sample lists, spreading the first evenly through the pass.

    Online updates see the minority class at regular intervals instead of
    one block per epoch, which is what lets the reference configuration
    converge within its epoch budget.
    """
    positives = list(positives)
    negatives = list(negatives)
    out = []
    pi = ni = 0
    total = len(positives) + len(negatives)
    for k in range(total):
        if pi < len(positives) and k * len(positives) >= pi * total:
            out.append(positives[pi])
            pi += 1
        elif ni < len(negatives):
            out.append(negatives[ni])
            ni += 1
        else:
            out.append(positives[pi])
            pi += 1
    return out
