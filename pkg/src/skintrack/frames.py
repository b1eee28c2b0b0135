"""Image frames and binary PPM (P6) encoding/decoding.

The only raster format supported is binary PPM with maxval 255: it is
bit-exact, trivial to produce from other tools, and matches the 24-bit
frames the rest of the pipeline expects. Header comments (``#`` to end
of line) are accepted and skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PpmParseError

_WHITESPACE = b" \t\n\r\x0b\x0c"

# Palette multiplier for false-colour rendering. The colour of label L is
# ((L * 2654435769) mod 2^24) split into (r, g, b) bytes, high to low.
# The multiplier is odd, so L -> colour is a bijection on [0, 2^24): no
# two labels below 2^24 share a colour.
PALETTE_MULTIPLIER = 0x9E3779B9


@dataclass(eq=False)
class Frame:
    """A width x height grid of 8-bit RGB pixels.

    ``data`` is a (height, width, 3) uint8 array; ``data[y, x]`` is the
    pixel at column x, row y with origin at the top-left corner.
    """

    width: int
    height: int
    data: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"frame dimensions must be positive, got {self.width}x{self.height}")
        if (
            not isinstance(self.data, np.ndarray)
            or self.data.dtype != np.uint8
            or self.data.shape != (self.height, self.width, 3)
        ):
            raise ValueError("frame data must be a (height, width, 3) uint8 array")

    @classmethod
    def from_pixels(cls, width: int, height: int, pixels) -> "Frame":
        """Build a frame from a row-major list of (r, g, b) triples."""
        pixels = list(pixels)
        if len(pixels) != width * height:
            raise ValueError(f"expected {width * height} pixels, got {len(pixels)}")
        for p in pixels:
            if len(p) != 3 or any(not (0 <= c <= 255) for c in p):
                raise ValueError(f"pixel {p!r} out of range")
        data = np.array(pixels, dtype=np.uint8).reshape(height, width, 3)
        return cls(width, height, data)

    @classmethod
    def filled(cls, width: int, height: int, rgb) -> "Frame":
        """A frame of uniform colour."""
        r, g, b = rgb
        data = np.empty((height, width, 3), dtype=np.uint8)
        data[:, :] = (r, g, b)
        return cls(width, height, data)

    def pixel(self, x: int, y: int):
        r, g, b = self.data[y, x]
        return (int(r), int(g), int(b))

    @property
    def pixels(self):
        """Row-major list of (r, g, b) tuples."""
        return [tuple(int(c) for c in p) for p in self.data.reshape(-1, 3)]

    def copy(self) -> "Frame":
        return Frame(self.width, self.height, self.data.copy())

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.data, other.data)
        )


def load_ppm(data: bytes) -> Frame:
    """Decode a binary PPM (P6) byte stream.

    Grammar: magic "P6"; whitespace/comment-separated ASCII width, height
    and maxval tokens (maxval must be 255); exactly one whitespace byte;
    then width*height*3 raw bytes. Anything else raises PpmParseError
    naming the offending field.
    """
    if data[:2] != b"P6":
        raise PpmParseError(f"unsupported magic {data[:2]!r}, expected b'P6'")
    pos = 2

    def next_token(name: str) -> bytes:
        nonlocal pos
        while pos < len(data):
            c = data[pos]
            if c in _WHITESPACE:
                pos += 1
            elif c == 0x23:  # '#' comment to end of line
                while pos < len(data) and data[pos] not in b"\r\n":
                    pos += 1
            else:
                break
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos] != 0x23:
            pos += 1
        if start == pos:
            raise PpmParseError(f"missing {name} in header")
        return data[start:pos]

    def int_token(name: str) -> int:
        tok = next_token(name)
        if not tok.isdigit():
            raise PpmParseError(f"invalid {name} {tok!r}")
        return int(tok)

    width = int_token("width")
    height = int_token("height")
    maxval = int_token("maxval")
    if width == 0 or height == 0:
        raise PpmParseError(f"zero dimension: width={width} height={height}")
    if maxval != 255:
        raise PpmParseError(f"unsupported maxval {maxval}, must be 255")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PpmParseError("missing whitespace after maxval")
    pos += 1

    need = width * height * 3
    avail = len(data) - pos
    if avail < need:
        raise PpmParseError(
            f"truncated pixel payload: expected {need} bytes at offset {pos}, got {avail}"
        )
    if avail > need:
        raise PpmParseError(f"{avail - need} trailing bytes after pixel payload")
    pixels = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
    return Frame(width, height, pixels.reshape(height, width, 3).copy())


def save_ppm(frame: Frame) -> bytes:
    """Encode a frame as binary PPM. load_ppm(save_ppm(f)) == f."""
    header = f"P6\n{frame.width} {frame.height}\n255\n".encode("ascii")
    return header + frame.data.tobytes()


def label_colour(label: int):
    """False-colour palette entry for a region label (see PALETTE_MULTIPLIER)."""
    c = (label * PALETTE_MULTIPLIER) & 0xFFFFFF
    return (c >> 16, (c >> 8) & 0xFF, c & 0xFF)


def false_colour(segmentation) -> Frame:
    """Render a label map as a false-colour frame.

    Two pixels get the same colour iff they carry the same label (exact
    for any region count below 2^24, see label_colour).
    """
    k = segmentation.region_count
    codes = (np.arange(k + 1, dtype=np.int64) * PALETTE_MULTIPLIER) & 0xFFFFFF
    lut = np.empty((k + 1, 3), dtype=np.uint8)
    lut[:, 0] = codes >> 16
    lut[:, 1] = (codes >> 8) & 0xFF
    lut[:, 2] = codes & 0xFF
    data = lut[segmentation.labels]
    return Frame(segmentation.width, segmentation.height, data)
