import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import make_random_frame
from skintrack import (
    Frame,
    PpmParseError,
    false_colour,
    label_colour,
    load_ppm,
    save_ppm,
    segment,
)


def ppm_bytes(width, height, payload=None):
    if payload is None:
        payload = bytes(width * height * 3)
    return f"P6\n{width} {height}\n255\n".encode() + payload


class TestLoadPpm:
    def test_minimal_two_pixel_file(self):
        data = b"P6\n2 1\n255\n" + bytes([255, 0, 0, 0, 255, 0])
        frame = load_ppm(data)
        assert (frame.width, frame.height) == (2, 1)
        assert frame.pixels == [(255, 0, 0), (0, 255, 0)]

    def test_rejects_p5_magic(self):
        with pytest.raises(PpmParseError, match="unsupported magic"):
            load_ppm(b"P5\n2 1\n255\n" + bytes(2))

    def test_camera_sized_frame_has_76800_pixels(self):
        frame = load_ppm(ppm_bytes(320, 240))
        assert frame.width * frame.height == 76800
        assert len(frame.pixels) == 76800

    def test_header_comments_are_skipped(self):
        data = b"P6 # binary rgb\n# size next\n2 #cols\n1\n255\n" + bytes(6)
        frame = load_ppm(data)
        assert (frame.width, frame.height) == (2, 1)

    def test_crlf_and_tab_whitespace(self):
        data = b"P6\r\n2\t1\r255\n" + bytes(6)
        assert load_ppm(data).width == 2

    @pytest.mark.parametrize(
        "data,message",
        [
            (b"P6\n0 1\n255\n", "zero dimension"),
            (b"P6\n1 0\n255\n", "zero dimension"),
            (b"P6\n2 1\n254\n" + bytes(6), "maxval"),
            (b"P6\n2 1\n255\n" + bytes(5), "truncated pixel payload"),
            (b"P6\n2 1\n255\n" + bytes(7), "trailing bytes"),
            (b"P6\n2 1\n", "missing maxval"),
            (b"P6\nx 1\n255\n" + bytes(6), "invalid width"),
            (b"P6\n2 -1\n255\n" + bytes(6), "invalid height"),
            (b"P6\n2 1\n255", "missing whitespace after maxval"),
            (b"", "unsupported magic"),
        ],
    )
    def test_malformed_inputs_name_the_problem(self, data, message):
        with pytest.raises(PpmParseError, match=message):
            load_ppm(data)


class TestSavePpm:
    def test_minimal_encoding(self):
        frame = Frame.from_pixels(1, 1, [(0, 0, 0)])
        assert save_ppm(frame) == b"P6\n1 1\n255\n\x00\x00\x00"

    def test_round_trip_random_32x32(self):
        frame = make_random_frame(32, 32, seed=5)
        assert load_ppm(save_ppm(frame)) == frame

    def test_round_trip_camera_sized(self):
        frame = make_random_frame(320, 240, seed=6)
        assert load_ppm(save_ppm(frame)) == frame

    @settings(max_examples=60, deadline=None)
    @given(
        width=st.integers(1, 12),
        height=st.integers(1, 12),
        seed=st.integers(0, 2**32),
    )
    def test_round_trip_property(self, width, height, seed):
        frame = make_random_frame(width, height, seed)
        assert load_ppm(save_ppm(frame)) == frame


class TestFrame:
    def test_pixel_accessor(self):
        frame = Frame.from_pixels(2, 2, [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12)])
        assert frame.pixel(0, 0) == (1, 2, 3)
        assert frame.pixel(1, 0) == (4, 5, 6)
        assert frame.pixel(0, 1) == (7, 8, 9)

    def test_pixel_count_must_match(self):
        with pytest.raises(ValueError, match="expected 4 pixels"):
            Frame.from_pixels(2, 2, [(0, 0, 0)])

    def test_channel_range_checked(self):
        with pytest.raises(ValueError, match="out of range"):
            Frame.from_pixels(1, 1, [(256, 0, 0)])

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            Frame.filled(0, 4, (0, 0, 0))

    def test_equality_is_by_value(self):
        a = make_random_frame(5, 4, seed=1)
        b = make_random_frame(5, 4, seed=1)
        c = make_random_frame(5, 4, seed=2)
        assert a == b
        assert a != c


class TestFalseColour:
    def test_single_region_is_uniform(self):
        seg = segment(Frame.filled(4, 4, (9, 9, 9)), eta=1)
        rendered = false_colour(seg)
        assert len(set(rendered.pixels)) == 1

    def test_two_regions_two_colours(self):
        frame = Frame.from_pixels(2, 1, [(0, 0, 0), (200, 200, 200)])
        seg = segment(frame, eta=28)
        assert seg.region_count == 2
        rendered = false_colour(seg)
        assert len(set(rendered.pixels)) == 2

    def test_colour_count_matches_region_count(self):
        frame = make_random_frame(64, 64, seed=11, levels=(0, 16, 32))
        seg = segment(frame, eta=28)
        rendered = false_colour(seg)
        # independent count of distinct labels straight off the label grid
        distinct_labels = len({int(v) for v in seg.labels.ravel()})
        assert len(set(rendered.pixels)) == distinct_labels

    def test_palette_collision_free_up_to_4096(self):
        colours = {label_colour(label) for label in range(1, 4097)}
        assert len(colours) == 4096

    def test_palette_formula_is_fixed(self):
        # colour(L) = ((L * 2654435769) mod 2^24) split into r,g,b bytes
        code = (7 * 2654435769) % 2**24
        assert label_colour(7) == (code >> 16, (code >> 8) & 255, code & 255)

    def test_rendered_colours_are_consistent(self):
        frame = make_random_frame(16, 16, seed=3, levels=(0, 16))
        seg = segment(frame, eta=17)
        rendered = false_colour(seg)
        for y in range(16):
            for x in range(16):
                assert rendered.pixel(x, y) == label_colour(int(seg.labels[y, x]))


def test_mask_render_uses_uint8():
    frame = make_random_frame(8, 8, seed=2)
    assert frame.data.dtype == np.uint8
