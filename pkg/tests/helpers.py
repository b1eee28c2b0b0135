"""Shared test utilities: deterministic random frames and the naive
segmentation oracle."""

from skintrack import Frame, SplitMix64


def make_random_frame(width, height, seed, levels=None):
    """Deterministic random frame. With ``levels``, channels are drawn
    from that small value set, which produces merge-rich structure at
    moderate thresholds."""
    rng = SplitMix64(seed)
    pixels = []
    for _ in range(width * height):
        if levels is None:
            pixels.append((rng.next_channel(), rng.next_channel(), rng.next_channel()))
        else:
            pixels.append(tuple(levels[rng.next_u64() % len(levels)] for _ in range(3)))
    return Frame.from_pixels(width, height, pixels)


def naive_segment_labels(frame, eta):
    """Independent reference labelling: depth-first flood fill over 2-D
    coordinates with the same scan order and the same seed-referenced
    max-channel predicate. Returns a flat row-major label list.

    Deliberately different traversal (LIFO stack, coordinate pairs, no
    shared code) from the production implementation.
    """
    w, h = frame.width, frame.height
    px = frame.pixels
    labels = [0] * (w * h)
    k = 0
    for sy in range(h):
        for sx in range(w):
            if labels[sy * w + sx]:
                continue
            k += 1
            sr, sg, sb = px[sy * w + sx]
            labels[sy * w + sx] = k
            stack = [(sx, sy)]
            while stack:
                x, y = stack.pop()
                for nx, ny in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
                    if 0 <= nx < w and 0 <= ny < h and not labels[ny * w + nx]:
                        r, g, b = px[ny * w + nx]
                        if max(abs(r - sr), abs(g - sg), abs(b - sb)) < eta:
                            labels[ny * w + nx] = k
                            stack.append((nx, ny))
    return labels
