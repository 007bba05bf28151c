"""Adaptive fuzzy vector filters: FVMF, FVDF, ANNF, ANNMF, FOVMF, FOVDF.

All of them are weighted averages of the window pixels where the weights
are fuzzy transformations of each pixel's cumulative distance to its
peers.  Outputs are real-valued and generally not window members.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .. import _mathkern as mk
from .._mathkern import JIT_OPTS
from ..colormath import DistanceKind, resolve_acos_mode
from ..imagecore import as_window

# weight transformations
W_EXPONENTIAL = 0
W_SIGMOIDAL = 1
W_NEAREST_NEIGHBOR = 2
W_COMPOSITE_NN = 3


@dataclass(frozen=True)
class FuzzyWeightKind:
    """Selects the fuzzy transformation and the distance it is applied to."""

    kind: str
    gamma: float = 0.5
    beta: float = 1.0
    distance: Optional[DistanceKind] = None

    def __post_init__(self):
        if self.kind not in ("exponential", "sigmoidal", "nearest_neighbor", "composite_nn"):
            raise ValueError(f"unknown fuzzy weight kind {self.kind!r}")
        if self.gamma <= 0.0 or self.beta <= 0.0:
            raise ValueError("gamma and beta must be positive")

    @classmethod
    def exponential(cls, gamma=0.5, beta=1.0):
        """exp(-l^gamma / beta) over cumulative Minkowski distances."""
        return cls("exponential", gamma=gamma, beta=beta)

    @classmethod
    def sigmoidal(cls, gamma=1.0, beta=2.0):
        """beta / (1 + exp(a))^gamma over cumulative angular distances."""
        return cls("sigmoidal", gamma=gamma, beta=beta)

    @classmethod
    def nearest_neighbor(cls, distance=None):
        """(D_max - D_i) / (D_max - D_min) over the chosen cumulative distance."""
        return cls("nearest_neighbor", distance=distance or DistanceKind.angular())

    @classmethod
    def composite_nn(cls):
        """Nearest-neighbor form over summed composite distances."""
        return cls("composite_nn")

    @property
    def code(self):
        return {"exponential": W_EXPONENTIAL, "sigmoidal": W_SIGMOIDAL,
                "nearest_neighbor": W_NEAREST_NEIGHBOR, "composite_nn": W_COMPOSITE_NN}[self.kind]


@njit(**JIT_OPTS)
def fill_fuzzy_weights(win, wkind, gamma, beta, dkind, gdd, p, mode, out):
    """Raw fuzzy weights for every window pixel.

    The exponential form subtracts the minimal l^gamma before
    exponentiation; normalization cancels the shift exactly, and the raw
    form would underflow for large cumulative distances.
    """
    n = win.shape[0]
    if wkind == W_EXPONENTIAL:
        tmin = 1e308
        for i in range(n):
            t = mk.cum_lp(win, i, p) ** gamma
            out[i] = t
            if t < tmin:
                tmin = t
        for i in range(n):
            out[i] = math.exp(-(out[i] - tmin) / beta)
    elif wkind == W_SIGMOIDAL:
        for i in range(n):
            a = mk.cum_ang(win, i, mode)
            out[i] = beta / (1.0 + math.exp(a)) ** gamma
    else:
        dmin = 1e308
        dmax = -1e308
        for i in range(n):
            if wkind == W_COMPOSITE_NN:
                d = 0.0
                for j in range(n):
                    d += mk.composite_pair(win, i, j)
            else:
                d = mk.cum_kind(win, i, dkind, gdd, p, mode)
            out[i] = d
            if d < dmin:
                dmin = d
            if d > dmax:
                dmax = d
        span = dmax - dmin
        if span <= 0.0:
            for i in range(n):
                out[i] = 1.0
        else:
            for i in range(n):
                out[i] = (dmax - out[i]) / span


@njit(**JIT_OPTS)
def k_fwaf(win, params):
    p = params[0]
    mode = int(params[1])
    wkind = int(params[2])
    gamma = params[3]
    beta = params[4]
    dkind = int(params[5])
    gdd = params[6]
    n = win.shape[0]
    w = np.empty(n)
    fill_fuzzy_weights(win, wkind, gamma, beta, dkind, gdd, p, mode, w)
    ws = 0.0
    for i in range(n):
        ws += w[i]
    if ws <= 0.0:
        # degenerate all-zero weights: fall back to a uniform average
        for i in range(n):
            w[i] = 1.0
        ws = float(n)
    s0 = s1 = s2 = 0.0
    for i in range(n):
        s0 += w[i] * win[i, 0]
        s1 += w[i] * win[i, 1]
        s2 += w[i] * win[i, 2]
    return s0 / ws, s1 / ws, s2 / ws


@njit(**JIT_OPTS)
def k_fovf(win, params):
    p = params[0]
    mode = int(params[1])
    wkind = int(params[2])
    gamma = params[3]
    beta = params[4]
    n = win.shape[0]
    w = np.empty(n)
    fill_fuzzy_weights(win, wkind, gamma, beta, 0, 0.5, p, mode, w)
    ws = 0.0
    for i in range(n):
        ws += w[i]
    k = 0
    if ws > 0.0:
        thr = 1.0 / n
        for i in range(n):
            if w[i] / ws > thr:
                k += 1
    if k < 1:
        k = 1
    order = mk.stable_order_desc(w)
    s0 = s1 = s2 = 0.0
    sw = 0.0
    for r in range(k):
        i = order[r]
        s0 += w[i] * win[i, 0]
        s1 += w[i] * win[i, 1]
        s2 += w[i] * win[i, 2]
        sw += w[i]
    if sw <= 0.0:
        i = order[0]
        return win[i, 0], win[i, 1], win[i, 2]
    return s0 / sw, s1 / sw, s2 / sw


def _weight_params(kind, mode, p):
    m = float(resolve_acos_mode(mode))
    dk = kind.distance or DistanceKind.angular()
    return np.array([p, m, float(kind.code), kind.gamma, kind.beta,
                     float(dk.code), dk.gamma])


def fuzzy_weights(win, kind, mode="approximate", p=2.0):
    """Raw and normalized fuzzy weights for a window.

    Returns (raw, normalized); the normalized copy sums to 1.  Degenerate
    nearest-neighbor cases (all cumulative distances equal) yield uniform
    weights.
    """
    w = as_window(win)
    out = np.empty(w.shape[0])
    pr = _weight_params(kind, mode, p)
    fill_fuzzy_weights(w, int(pr[2]), pr[3], pr[4], int(pr[5]), pr[6], p,
                       int(pr[1]), out)
    total = out.sum()
    if total <= 0.0:
        norm = np.full(w.shape[0], 1.0 / w.shape[0])
    else:
        norm = out / total
    return out, norm


def fwaf(win, kind, mode="approximate", p=2.0):
    """Fuzzy weighted average of the window under the given weight kind."""
    w = as_window(win)
    return np.array(k_fwaf(w, _weight_params(kind, mode, p)))


def fovf(win, kind, mode="approximate", p=2.0):
    """Fuzzy ordered average over the pixels whose normalized weight
    exceeds 1/n (at least one pixel is always kept)."""
    if kind.kind not in ("exponential", "sigmoidal"):
        raise ValueError("fovf supports exponential or sigmoidal weights")
    w = as_window(win)
    return np.array(k_fovf(w, _weight_params(kind, mode, p)))


def fvmf(win, gamma=0.5, beta=1.0, p=2.0, mode="approximate"):
    """Fuzzy vector median: exponential weights over Minkowski sums."""
    return fwaf(win, FuzzyWeightKind.exponential(gamma, beta), mode, p)


def fvdf(win, gamma=1.0, beta=2.0, mode="approximate"):
    """Fuzzy vector directional: sigmoidal weights over angular sums."""
    return fwaf(win, FuzzyWeightKind.sigmoidal(gamma, beta), mode)


def annf(win, distance=None, mode="approximate", p=2.0):
    """Adaptive nearest-neighbor weights over the chosen cumulative distance
    (angular by default)."""
    return fwaf(win, FuzzyWeightKind.nearest_neighbor(distance), mode, p)


def annmf(win, mode="approximate"):
    """Nearest-neighbor weights over summed composite distances."""
    return fwaf(win, FuzzyWeightKind.composite_nn(), mode)


def fovmf(win, gamma=0.5, beta=1.0, p=2.0, mode="approximate"):
    """Fuzzy ordered vector median (exponential weights)."""
    return fovf(win, FuzzyWeightKind.exponential(gamma, beta), mode, p)


def fovdf(win, gamma=1.0, beta=2.0, mode="approximate"):
    """Fuzzy ordered vector directional (sigmoidal weights)."""
    return fovf(win, FuzzyWeightKind.sigmoidal(gamma, beta), mode)
