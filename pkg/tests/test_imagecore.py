import math

import numpy as np
import pytest

import vfkit
from vfkit import imagecore as ic
from vfkit.colormath import DistanceKind
from vfkit.filters import FilterSpec, basic

import oracles as orc
from conftest import impulse_window, random_image, random_window


class TestExtractWindow:
    def test_single_pixel_image_replicates(self):
        img = np.array([[[7, 8, 9]]], dtype=np.uint8)
        win = vfkit.extract_window(img, 0, 0, 3)
        assert win.shape == (9, 3)
        assert (win == [7.0, 8.0, 9.0]).all()

    def test_interior_pixel_literal_neighbors(self, rng):
        img = random_image(rng, 5, 5)
        win = vfkit.extract_window(img, 2, 2, 3)
        expected = img[1:4, 1:4].reshape(9, 3)
        assert (win == expected).all()

    def test_corner_clamping(self, rng):
        img = random_image(rng, 8, 8)
        win = vfkit.extract_window(img, 0, 0, 3)
        expected = [img[max(0, y), max(0, x)] for y in (-1, 0, 1) for x in (-1, 0, 1)]
        assert (win == np.array(expected, dtype=np.float64)).all()
        # 3x3 corner window of a large image touches exactly 4 source pixels
        assert len({tuple(r) for r in win}) == len(
            {tuple(img[y, x]) for y in (0, 1) for x in (0, 1)})

    def test_center_element_is_the_pixel(self, rng):
        img = random_image(rng, 6, 7)
        for x, y in [(0, 0), (6, 5), (3, 2)]:
            win = vfkit.extract_window(img, x, y, 3)
            assert (win[4] == img[y, x]).all()

    def test_out_of_bounds_raises(self, rng):
        img = random_image(rng, 4, 4)
        for x, y in [(-1, 0), (0, -1), (4, 0), (0, 4)]:
            with pytest.raises(ValueError):
                vfkit.extract_window(img, x, y, 3)

    def test_even_window_rejected(self, rng):
        with pytest.raises(ValueError):
            vfkit.extract_window(random_image(rng), 0, 0, 4)


class TestWindowValidation:
    def test_accepts_9_and_25(self, rng):
        ic.as_window(random_window(rng, 9))
        ic.as_window(random_window(rng, 25))

    def test_rejects_bad_sizes(self, rng):
        for n in (3, 8, 12, 16):
            with pytest.raises(ValueError):
                ic.as_window(rng.uniform(0, 255, (n, 3)))


class TestCumulativeDistance:
    def test_zero_for_constant(self):
        win = np.full((9, 3), 42.0)
        assert vfkit.cumulative_distance((42, 42, 42), win) == 0.0

    def test_impulse_center_value(self):
        win = impulse_window()
        got = vfkit.cumulative_distance((250, 250, 250), win)
        assert got == pytest.approx(8 * 240 * math.sqrt(3), rel=1e-12)

    def test_directional_collinear_window(self):
        # all pixels on the gray axis: zero angular sum kills the product
        win = np.outer(np.arange(1, 10, dtype=float), np.ones(3))
        kind = DistanceKind.directional(gamma=0.5)
        assert vfkit.cumulative_distance((5, 5, 5), win, kind) == 0.0

    def test_directional_gamma_zero_is_minkowski(self, rng):
        win = random_window(rng)
        v = rng.uniform(0, 255, 3)
        d0 = vfkit.cumulative_distance(v, win, DistanceKind.directional(gamma=0.0))
        dm = vfkit.cumulative_distance(v, win, DistanceKind.minkowski())
        assert d0 == dm

    def test_matches_oracle(self, rng):
        for _ in range(50):
            win = random_window(rng)
            v = tuple(rng.uniform(0, 255, 3))
            rows = orc.to_rows(win)
            got = vfkit.cumulative_distance(v, win, DistanceKind.minkowski())
            want = sum(orc.o_lp(v, r, 2.0) for r in rows)
            assert got == pytest.approx(want, rel=1e-12)


class TestRankWindow:
    def test_constant_window_identity_permutation(self):
        win = np.full((9, 3), 9.0)
        assert list(vfkit.rank_window(win)) == list(range(9))

    def test_impulse_ranked_last(self):
        order = vfkit.rank_window(impulse_window())
        assert order[-1] == 4

    def test_matches_resort_oracle(self, rng):
        for _ in range(100):
            win = random_window(rng)
            rows = orc.to_rows(win)
            got = list(vfkit.rank_window(win))
            want = orc.o_rank(rows, lambda i: orc.o_cum_lp(rows, i, 2.0))
            assert got == want

    def test_angular_matches_oracle(self, rng):
        for _ in range(50):
            win = random_window(rng)
            rows = orc.to_rows(win)
            got = list(vfkit.rank_window(win, DistanceKind.angular()))
            want = orc.o_rank(rows, lambda i: orc.o_cum_ang(rows, i))
            assert got == want

    def test_first_index_is_argmin(self, rng):
        for _ in range(50):
            win = random_window(rng)
            order = vfkit.rank_window(win)
            best = vfkit.cumulative_distance(win[order[0]], win)
            for i in range(9):
                assert best <= vfkit.cumulative_distance(win[i], win) + 1e-9


class TestQuantize:
    def test_half_away_from_zero(self):
        vals = np.array([0.4, 0.5, 1.49, 2.5, 254.5, 255.49])
        assert list(ic.quantize(vals)) == [0, 1, 1, 3, 255, 255]

    def test_negative_clamped(self):
        assert list(ic.quantize(np.array([-3.7, -0.5, -0.4]))) == [0, 0, 0]

    def test_overflow_clamped(self):
        assert list(ic.quantize(np.array([300.0, 255.5]))) == [255, 255]


class TestApplyFilter:
    def test_identity_filter_roundtrip(self, rng):
        img = random_image(rng)
        out = vfkit.apply_filter(img, "none")
        assert out.dtype == np.uint8
        assert (out == img).all()

    def test_constant_image_fixpoint(self):
        img = np.full((12, 10, 3), 200, dtype=np.uint8)
        out = vfkit.apply_filter(img, "vmf")
        assert (out == img).all()

    def test_output_shape_and_dtype(self, rng):
        img = random_image(rng, 7, 11)
        out = vfkit.apply_filter(img, "atvmf")
        assert out.shape == img.shape and out.dtype == np.uint8

    def test_vmf_matches_per_pixel_oracle(self, rng):
        img = random_image(rng, 16, 16)
        out = vfkit.apply_filter(img, "vmf")
        for y in range(16):
            for x in range(16):
                rows = orc.to_rows(vfkit.extract_window(img, x, y, 3))
                want = rows[orc.o_vmf_index(rows)]
                assert tuple(out[y, x]) == want

    def test_unknown_filter_rejected(self, rng):
        with pytest.raises(vfkit.filters.UnknownFilterError):
            vfkit.apply_filter(random_image(rng), "medinan")

    def test_even_window_rejected(self, rng):
        with pytest.raises(ValueError):
            vfkit.apply_filter(random_image(rng), "vmf", w=4)

    def test_window_5_supported(self, rng):
        img = random_image(rng, 8, 8)
        out = vfkit.apply_filter(img, "vmf", w=5)
        rows = orc.to_rows(vfkit.extract_window(img, 3, 3, 5))
        assert tuple(out[3, 3]) == rows[orc.o_vmf_index(rows)]

    def test_switching_filter_inert_on_flat_regions(self):
        # one impulse in a flat image: a switching filter touches at most
        # the windows that can see it; far-away pixels stay bit-identical
        img = np.full((16, 16, 3), 90, dtype=np.uint8)
        img[8, 8] = (250, 250, 250)
        out = vfkit.apply_filter(img, "pgf")
        assert (out[:6, :6] == 90).all()
        assert (out[11:, 11:] == 90).all()
        assert (out[8, 8] == 90).all()  # the impulse itself is repaired

    def test_driver_matches_window_api(self, rng):
        # one math path: image driver output == quantized window-level call
        img = random_image(rng, 6, 6)
        out = vfkit.apply_filter(img, FilterSpec("ddf", {"gamma": 0.3}))
        for x, y in [(0, 0), (3, 2), (5, 5)]:
            win = vfkit.extract_window(img, x, y, 3)
            want = ic.quantize(basic.ddf(win, gamma=0.3))
            assert (out[y, x] == want).all()
