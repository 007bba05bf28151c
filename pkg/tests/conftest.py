import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_window(rng, n=9, low=0, high=256):
    """Uniform random integer-valued window (float64 rows)."""
    return rng.integers(low, high, size=(n, 3)).astype(np.float64)


def random_windows(rng, count, n=9):
    return [random_window(rng, n) for _ in range(count)]


def impulse_window(value=250.0, background=10.0, n=9):
    """Flat window with an impulse at the center."""
    w = np.full((n, 3), background)
    w[(n - 1) // 2] = value
    return w


def random_image(rng, h=16, w=16):
    return rng.integers(0, 256, size=(h, w, 3)).astype(np.uint8)
