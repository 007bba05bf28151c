import numpy as np
import pytest

import vfkit

from conftest import random_image


class TestDegenerateGeometry:
    @pytest.mark.parametrize("shape", [(1, 1), (1, 8), (8, 1), (2, 2)])
    def test_tiny_images_fully_padded(self, rng, shape):
        img = rng.integers(0, 256, (*shape, 3)).astype(np.uint8)
        for name in ("vmf", "pgf", "vmrhf", "ffnrf", "kvmf", "acwddf"):
            out = vfkit.apply_filter(img, name)
            assert out.shape == img.shape

    def test_single_pixel_is_fixpoint_for_selectors(self, rng):
        img = rng.integers(0, 256, (1, 1, 3)).astype(np.uint8)
        # the window is nine copies of the pixel: every filter returns it
        for name in vfkit.BENCH_FILTERS:
            assert (vfkit.apply_filter(img, name) == img).all(), name


class TestWiderWindows:
    def test_all_filters_run_at_w5(self, rng):
        img = random_image(rng, 12, 12)
        for name in vfkit.registry_names(include_extras=True):
            out = vfkit.apply_filter(img, name, w=5)
            assert out.shape == img.shape and out.dtype == np.uint8

    def test_constant_fixpoint_at_w5(self):
        flat = np.full((16, 16, 3), 99, dtype=np.uint8)
        for name in vfkit.BENCH_FILTERS:
            assert (vfkit.apply_filter(flat, name, w=5) == flat).all(), name

    def test_w5_impulse_removal(self, rng):
        img = np.full((16, 16, 3), 60, dtype=np.uint8)
        img[8, 8] = (255, 0, 255)
        out = vfkit.apply_filter(img, "vmf", w=5)
        assert (out == 60).all()


class TestNoiseExpectation:
    def test_correlated_mae_expectation_on_gray(self):
        # per pixel: one channel corrupted w.p. 0.75*phi, all three w.p.
        # 0.25*phi -> expected corrupted channel fraction 0.5*phi; each
        # corrupted channel of a 128-gray image moves by 122.5 on average
        img = np.full((256, 256, 3), 128, dtype=np.uint8)
        noisy = vfkit.corrupt(img, vfkit.NoiseConfig("correlated", 0.10, seed=31))
        expected = 0.5 * 0.10 * 122.5
        assert vfkit.mae(img, noisy) == pytest.approx(expected, rel=0.05)
