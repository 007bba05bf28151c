"""Image and window plumbing: extraction, ranking, and the filter driver.

Images are numpy arrays of shape (height, width, 3), dtype uint8.  Windows
are float64 arrays of shape (n, 3) in row-major order, n = w*w for an odd
w >= 3, with the filtered pixel at the center index (n - 1) // 2.
Borders replicate the nearest valid pixel so every window is full.
"""

import math

import numpy as np

from . import _mathkern as mk
from .colormath import DistanceKind, resolve_acos_mode


def as_image(img):
    """Validate an image array; returns it unchanged."""
    a = np.asarray(img)
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) image, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("image must have at least one pixel")
    if a.dtype != np.uint8:
        raise ValueError(f"expected uint8 channels, got {a.dtype}")
    return a


def as_window(win):
    """Validate a window and return it as a contiguous float64 (n, 3) array."""
    w = np.ascontiguousarray(win, dtype=np.float64)
    if w.ndim != 2 or w.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) window, got shape {w.shape}")
    n = w.shape[0]
    side = math.isqrt(n)
    if n < 9 or side * side != n or side % 2 == 0:
        raise ValueError(f"window size {n} is not an odd perfect square >= 9")
    return w


def center_index(n):
    """Index of the center pixel of an n-pixel window."""
    return (n - 1) // 2


def pad_replicate(img, r):
    """Replicate-pad an image by r pixels on each side, as float64."""
    return np.pad(np.asarray(img, dtype=np.float64),
                  ((r, r), (r, r), (0, 0)), mode="edge")


def extract_window(img, x, y, w=3):
    """The w x w neighborhood of (x, y) in row-major order, replicate-padded.

    x is the column, y the row; both must lie inside the image.  The
    element at index (w*w - 1) // 2 is the pixel at (x, y) itself.
    """
    a = as_image(img)
    h_img, w_img = a.shape[0], a.shape[1]
    if not (0 <= x < w_img and 0 <= y < h_img):
        raise ValueError(f"coordinates ({x}, {y}) outside {w_img}x{h_img} image")
    if w < 3 or w % 2 == 0:
        raise ValueError("window side must be odd and >= 3")
    r = w // 2
    ys = np.clip(np.arange(y - r, y + r + 1), 0, h_img - 1)
    xs = np.clip(np.arange(x - r, x + r + 1), 0, w_img - 1)
    return a[np.ix_(ys, xs)].reshape(w * w, 3).astype(np.float64)


def cumulative_distance(v, win, kind=None, mode="approximate"):
    """Cumulative distance from an arbitrary color vector to every window pixel.

    For the directional kind this is (sum A)^gamma * (sum Lp)^(1-gamma),
    blending the two aggregate sums rather than summing pairwise blends.
    """
    if kind is None:
        kind = DistanceKind.minkowski()
    w = as_window(win)
    vv = np.ascontiguousarray(v, dtype=np.float64)
    if vv.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {vv.shape}")
    m = resolve_acos_mode(mode)
    return mk.cum_kind_vec(vv, w, kind.code, kind.gamma, kind.p, m)


def rank_window(win, kind=None, mode="approximate"):
    """Window indices sorted by cumulative distance, ascending, stable ties.

    The first index is the argmin pixel (the rank-order filter output for
    the chosen distance kind).
    """
    if kind is None:
        kind = DistanceKind.minkowski()
    w = as_window(win)
    m = resolve_acos_mode(mode)
    keys = np.empty(w.shape[0])
    mk.fill_cum_kind(w, kind.code, kind.gamma, kind.p, m, keys)
    return np.argsort(keys, kind="stable")


def quantize(values):
    """Round real channel values half away from zero and clamp to [0, 255]."""
    v = np.asarray(values, dtype=np.float64)
    rounded = np.sign(v) * np.floor(np.abs(v) + 0.5)
    return np.clip(rounded, 0.0, 255.0).astype(np.uint8)


def apply_filter(img, spec, w=3):
    """Run a registered filter over every pixel of an image.

    Non-recursive: every output pixel is computed from a window of the
    input image, so results do not depend on pixel visitation order.
    Real-valued filter outputs are rounded half away from zero per channel
    and clamped to [0, 255].  ``spec`` is a FilterSpec or a filter name.
    """
    from .filters import resolve_spec
    from .filters._dispatch import run_filter

    a = as_image(img)
    if w < 3 or w % 2 == 0:
        raise ValueError("window side must be odd and >= 3")
    fid, params, qtab = resolve_spec(spec, w * w, a)
    padded = pad_replicate(a, w // 2)
    raw = run_filter(padded, a.shape[0], a.shape[1], w, fid, params, qtab)
    return quantize(raw)
