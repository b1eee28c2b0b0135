"""Regenerate the checked-in reference frame and its frozen label map.

The frame is a 96x72 synthetic composite: a vertical grey gradient (which
the seed-referenced predicate slices into horizontal bands), three
palette-coloured blobs, and a quantised-noise block. The label map is
frozen only after the implementation's output matches the independent
naive flood-fill oracle on this frame.

Run from the repository root:  python scripts/make_golden.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from helpers import naive_segment_labels  # noqa: E402

from skintrack import Frame, SplitMix64, labels_to_csv, save_ppm, segment, skin_palette  # noqa: E402

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"
ETA = 28


def build_reference_frame() -> Frame:
    width, height = 96, 72
    palette = skin_palette()
    pixels = []
    for y in range(height):
        value = (y * 255) // (height - 1)
        pixels.extend([(value, value, value)] * width)
    frame = Frame.from_pixels(width, height, pixels)

    frame.data[10:27, 8:29] = palette[0]
    frame.data[30:45, 40:57] = palette[6]
    cy, cx, radius = 18, 70, 9
    for y in range(cy - radius, cy + radius + 1):
        for x in range(cx - radius, cx + radius + 1):
            if (x - cx) ** 2 + (y - cy) ** 2 <= radius * radius:
                frame.data[y, x] = palette[3]

    rng = SplitMix64(2718)
    levels = (0, 16, 32)
    for y in range(48, 69):
        for x in range(8, 41):
            frame.data[y, x] = tuple(levels[rng.next_u64() % 3] for _ in range(3))
    return frame


def main() -> int:
    frame = build_reference_frame()
    seg = segment(frame, ETA)
    oracle = naive_segment_labels(frame, ETA)
    if seg.labels.ravel().tolist() != oracle:
        print("refusing to freeze: implementation disagrees with the oracle", file=sys.stderr)
        return 1
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    (GOLDEN_DIR / "reference.ppm").write_bytes(save_ppm(frame))
    (GOLDEN_DIR / "reference_labels_eta28.csv").write_text(labels_to_csv(seg), encoding="ascii")
    print(f"frozen: {seg.region_count} regions at eta={ETA}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
