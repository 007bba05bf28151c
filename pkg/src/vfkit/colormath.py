"""Distance and similarity measures between color vectors.

All measures treat a color as a 3-vector of nonnegative reals.  The angular
measures can run in two modes: ``"approximate"`` uses a piecewise cubic
arccos (fast, max error ~1.4e-4), ``"reference"`` uses the C library arccos.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _mathkern as mk

MODE_FAST = mk.MODE_FAST
MODE_REF = mk.MODE_REF

_MODE_NAMES = {
    "approx": MODE_FAST,
    "approximate": MODE_FAST,
    "fast": MODE_FAST,
    "ref": MODE_REF,
    "reference": MODE_REF,
}


def resolve_acos_mode(mode):
    """Map a mode name (or mode int) to the internal mode constant."""
    if mode in (MODE_FAST, MODE_REF):
        return mode
    try:
        return _MODE_NAMES[str(mode).lower()]
    except KeyError:
        raise ValueError(f"unknown acos mode {mode!r}; use 'approximate' or 'reference'") from None


@dataclass(frozen=True)
class DistanceKind:
    """Selector for the distance used by rank-based machinery.

    ``minkowski`` uses the p-norm of the channel differences, ``angular``
    the angle between the vectors, and ``directional`` the product
    A^gamma * Lp^(1-gamma).
    """

    kind: str
    p: float = 2.0
    gamma: float = 0.5

    def __post_init__(self):
        if self.kind not in ("minkowski", "angular", "directional"):
            raise ValueError(f"unknown distance kind {self.kind!r}")
        if self.p < 1.0:
            raise ValueError("Minkowski exponent p must be >= 1")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("directional gamma must be in [0, 1]")

    @classmethod
    def minkowski(cls, p=2.0):
        return cls("minkowski", p=p)

    @classmethod
    def angular(cls):
        return cls("angular")

    @classmethod
    def directional(cls, gamma=0.5, p=2.0):
        return cls("directional", p=p, gamma=gamma)

    @property
    def code(self):
        return {"minkowski": mk.KIND_MINKOWSKI,
                "angular": mk.KIND_ANGULAR,
                "directional": mk.KIND_DIRECTIONAL}[self.kind]


def _vec(a):
    v = np.asarray(a, dtype=np.float64)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


def asin_fast(x):
    """Cubic approximation of arcsin, valid only on [0, 0.5].

    Max error ~6.8e-5 there; arguments outside that interval are a
    caller bug and raise.
    """
    if not 0.0 <= x <= 0.5:
        raise ValueError(f"asin_fast argument {x} outside [0, 0.5]")
    return mk.asin_fast(x)


def acos_fast(x):
    """Fast arccos over [-1, 1] (inputs clamped), max error ~1.4e-4.

    The error is ~6.8e-5 on [0, 0.5]; above 0.5 the stable identity
    acos(x) = 2*asin(sqrt((1-x)/2)) is used, and negative arguments
    reflect through pi - acos(-x).
    """
    return mk.acos_fast(float(x))


def minkowski_distance(a, b, p=2.0):
    """p-norm of the channel differences; 0 iff a == b."""
    if p < 1.0:
        raise ValueError("Minkowski exponent p must be >= 1")
    va, vb = _vec(a), _vec(b)
    d = np.abs(va - vb)
    if p == 2.0:
        return float(math.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]))
    if p == 1.0:
        return float(d[0] + d[1] + d[2])
    return float((d[0] ** p + d[1] ** p + d[2] ** p) ** (1.0 / p))


def angular_distance(a, b, mode="approximate"):
    """Angle between two color vectors in radians.

    A zero vector has no direction and is treated as parallel to anything
    (angle 0).  The cosine is clamped to [-1, 1] before arccos.
    """
    va, vb = _vec(a), _vec(b)
    m = resolve_acos_mode(mode)
    return mk.angle3(va[0], va[1], va[2], vb[0], vb[1], vb[2], m)


def directional_pair_distance(a, b, gamma=0.5, p=2.0, mode="approximate"):
    """A(a,b)^gamma * Lp(a,b)^(1-gamma); 0**0 counts as 1.

    gamma = 0 degenerates to the pure Minkowski distance, gamma = 1 to the
    pure angle.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must be in [0, 1]")
    ang = angular_distance(a, b, mode)
    mag = minkowski_distance(a, b, p)
    return ang ** gamma * mag ** (1.0 - gamma)


def composite_distance(a, b):
    """Dissimilarity blending direction and magnitude into one scalar.

    1 - cos(theta) * (1 - |na - nb| / max(na, nb)).  Two zero vectors are
    identical (0); a zero vector against a nonzero one is maximally far (1).
    """
    va, vb = _vec(a), _vec(b)
    if np.array_equal(va, vb):
        return 0.0
    na = float(np.dot(va, va))
    nb = float(np.dot(vb, vb))
    if na == 0.0 and nb == 0.0:
        return 0.0
    if na == 0.0 or nb == 0.0:
        return 1.0
    na, nb = math.sqrt(na), math.sqrt(nb)
    c = min(float(np.dot(va, vb)) / (na * nb), 1.0)
    return 1.0 - c * (1.0 - abs(na - nb) / max(na, nb))


def cbrf_similarity(a, b):
    """Ratio of what two vectors differ by to what they jointly comprise.

    Algebraically ||a-b|| / ||a+b|| (law of cosines applied to the radical
    form); 0 when both vectors are zero.
    """
    va, vb = _vec(a), _vec(b)
    num = float(np.dot(va - vb, va - vb))
    den = float(np.dot(va + vb, va + vb))
    if den == 0.0:
        return 0.0
    return math.sqrt(num / den)


def fuzzy_metric_m(a, b, k_off=1024.0, alpha=3.5):
    """Multiplicative fuzzy similarity in (0, 1]; equals 1 iff a == b.

    Per channel ((min + K) / (max + K))^alpha, multiplied across channels.
    Monotone non-increasing in each per-channel absolute difference.
    """
    if k_off <= 0.0 or alpha <= 0.0:
        raise ValueError("K and alpha must be positive")
    va, vb = _vec(a), _vec(b)
    m = 1.0
    for c in range(3):
        lo, hi = (float(va[c]), float(vb[c])) if va[c] < vb[c] else (float(vb[c]), float(va[c]))
        m *= ((lo + k_off) / (hi + k_off)) ** alpha
    return m


@lru_cache(maxsize=8)
def fuzzy_q_table(k_off=1024.0, alpha=3.5):
    """256x256 table of the per-channel similarity term for 8-bit values.

    tab[a, b] == ((min(a,b) + K) / (max(a,b) + K))^alpha, bit-identical to
    the direct per-channel computation (scalar pow; numpy's vectorized pow
    can differ in the last ulp).
    """
    if k_off <= 0.0 or alpha <= 0.0:
        raise ValueError("K and alpha must be positive")
    tab = np.empty((256, 256))
    for a in range(256):
        row = tab[a]
        for b in range(a, 256):
            row[b] = ((a + k_off) / (b + k_off)) ** alpha
        for b in range(a):
            row[b] = tab[b, a]
    return tab


def fuzzy_metric_m_table(a, b, table):
    """Table-lookup path of the fuzzy similarity for integer channels."""
    va = np.asarray(a)
    vb = np.asarray(b)
    m = 1.0
    for c in range(3):
        m *= table[int(va[c]), int(vb[c])]
    return m
