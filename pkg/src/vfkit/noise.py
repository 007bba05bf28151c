"""Seeded impulsive noise models with order-independent determinism.

Every random decision is a pure function of (seed, pixel coordinates,
channel, draw index), so corrupting an image gives bit-identical results
regardless of evaluation order, thread count, or platform.

The mixing function is fixed and versioned as part of the benchmark
contract.  With ``F`` the 64-bit finalizer

    F(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
          z ^= z >> 27; z *= 0x94D049BB133111EB;
          z ^= z >> 31

(all arithmetic mod 2^64), the word for a draw is

    word(seed, y, x, c, d) = F(F(F(seed ^ 0x9E3779B97F4A7C15)
                                 ^ (y << 32 | x))
                               ^ (c << 2 | d))

where c is the channel (3 = the pixel-level categorical draw of the
correlated model) and d the draw index (0 = decision, 1 = value).
Uniform doubles in [0, 1) are (word >> 11) * 2^-53.  An impulse value
takes its subrange from bit 63 (0 = low) and its offset from
(word & 0xFFFFFFFF) mod 11: low values are the offset itself (0..10),
high values 245 + offset (245..255).
"""

from dataclasses import dataclass

import numpy as np

from .imagecore import as_image

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

# the pixel-level categorical draw of the correlated model
CHANNEL_PIXEL = 3
DRAW_DECISION = 0
DRAW_VALUE = 1


@dataclass(frozen=True)
class NoiseConfig:
    """Noise model selection with corruption probabilities and a seed.

    For the uncorrelated model ``phi`` is the per-channel corruption
    probability.  For the correlated model ``phi`` is the per-pixel
    corruption probability and ``phi1..phi3`` split the corrupted pixels
    between single-channel cases; the remaining 1 - (phi1+phi2+phi3)
    fraction corrupts all three channels.
    """

    model: str = "uncorrelated"
    phi: float = 0.1
    phi1: float = 0.25
    phi2: float = 0.25
    phi3: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if self.model not in ("uncorrelated", "correlated"):
            raise ValueError(f"unknown noise model {self.model!r}")
        if not 0.0 <= self.phi <= 1.0:
            raise ValueError("phi must be in [0, 1]")
        for v in (self.phi1, self.phi2, self.phi3):
            if v < 0.0:
                raise ValueError("channel probabilities must be nonnegative")
        if self.phi1 + self.phi2 + self.phi3 > 1.0 + 1e-12:
            raise ValueError("phi1 + phi2 + phi3 must not exceed 1")


def _finalize(z):
    with np.errstate(over="ignore"):
        z = z ^ (z >> np.uint64(30))
        z = z * _MIX1
        z = z ^ (z >> np.uint64(27))
        z = z * _MIX2
        return z ^ (z >> np.uint64(31))


def _words(seed, h, w, channel, draw):
    """The (h, w) grid of 64-bit draw words for one (channel, draw) pair."""
    s = _finalize(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) ^ _GOLDEN)
    ys, xs = np.meshgrid(np.arange(h, dtype=np.uint64),
                         np.arange(w, dtype=np.uint64), indexing="ij")
    coord = _finalize(s ^ ((ys << np.uint64(32)) | xs))
    return _finalize(coord ^ np.uint64((channel << 2) | draw))


def _uniform(words):
    return (words >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


def _impulse_values(words):
    """Impulse values in [0, 10] or [245, 255], each subrange p = 1/2."""
    high = (words >> np.uint64(63)).astype(np.uint8)
    offset = ((words & np.uint64(0xFFFFFFFF)) % np.uint64(11)).astype(np.uint8)
    return offset + high * np.uint8(245)


def corrupt_uncorrelated(img, phi, seed):
    """Replace each channel independently with an impulse, probability phi."""
    a = as_image(img)
    if not 0.0 <= phi <= 1.0:
        raise ValueError("phi must be in [0, 1]")
    out = a.copy()
    h, w = a.shape[0], a.shape[1]
    for c in range(3):
        hit = _uniform(_words(seed, h, w, c, DRAW_DECISION)) < phi
        values = _impulse_values(_words(seed, h, w, c, DRAW_VALUE))
        out[..., c] = np.where(hit, values, a[..., c])
    return out


def corrupt_correlated(img, cfg):
    """One categorical draw per pixel: clean, one corrupted channel, or all three."""
    a = as_image(img)
    out = a.copy()
    h, w = a.shape[0], a.shape[1]
    u = _uniform(_words(cfg.seed, h, w, CHANNEL_PIXEL, DRAW_DECISION))
    t1 = cfg.phi1 * cfg.phi
    t2 = t1 + cfg.phi2 * cfg.phi
    t3 = t2 + cfg.phi3 * cfg.phi
    all_three = (u >= t3) & (u < cfg.phi)
    for c, lo, hi in ((0, 0.0, t1), (1, t1, t2), (2, t2, t3)):
        hit = ((u >= lo) & (u < hi)) | all_three
        values = _impulse_values(_words(cfg.seed, h, w, c, DRAW_VALUE))
        out[..., c] = np.where(hit, values, a[..., c])
    return out


def corrupt(img, cfg):
    """Apply the configured noise model to an image."""
    if cfg.model == "uncorrelated":
        return corrupt_uncorrelated(img, cfg.phi, cfg.seed)
    return corrupt_correlated(img, cfg)
