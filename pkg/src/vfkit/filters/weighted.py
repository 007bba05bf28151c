"""Center-weighted vector filters and their adaptive switching variants.

The center-weighted family interpolates between the identity (smoothing
parameter k = 1) and the plain rank-order filter (k = C, the center
index); the adaptive variants probe three consecutive k values and switch
to the basic filter when the probes drift too far from the center pixel.
"""

import numpy as np
from numba import njit

from .. import _mathkern as mk
from .._mathkern import JIT_OPTS
from ..colormath import DistanceKind, resolve_acos_mode
from ..imagecore import as_window


@njit(**JIT_OPTS)
def _cw_argmin(win, k, kind, gdd, p, mode):
    """Argmin of the cumulative distance with the center term weighted
    n - 2k + 2; the directional kind blends the two weighted sums."""
    n = win.shape[0]
    center = (n - 1) // 2
    wc = float(n - 2 * k + 2)
    best = 1e308
    bi = 0
    for i in range(n):
        if kind == mk.KIND_DIRECTIONAL:
            sa = 0.0
            sl = 0.0
            for j in range(n):
                wj = wc if j == center else 1.0
                sa += wj * mk.ang_pair(win, i, j, mode)
                sl += wj * mk.lp_pair(win, i, j, p)
            s = sa ** gdd * sl ** (1.0 - gdd)
        else:
            s = 0.0
            for j in range(n):
                wj = wc if j == center else 1.0
                if kind == mk.KIND_MINKOWSKI:
                    s += wj * mk.lp_pair(win, i, j, p)
                else:
                    s += wj * mk.ang_pair(win, i, j, mode)
        if s < best:
            best = s
            bi = i
    return bi


@njit(**JIT_OPTS)
def k_cwvf(win, params):
    p = params[0]
    mode = int(params[1])
    kind = int(params[2])
    k = int(params[3])
    gdd = params[4]
    i = _cw_argmin(win, k, kind, gdd, p, mode)
    return win[i, 0], win[i, 1], win[i, 2]


@njit(**JIT_OPTS)
def k_mcwvmf(win, params):
    p = params[0]
    wgt = params[2]
    n = win.shape[0]
    center = (n - 1) // 2
    vi = mk.argmin_cum_lp(win, p)
    if mk.cum_lp(win, vi, p) < wgt * mk.cum_lp(win, center, p):
        return win[vi, 0], win[vi, 1], win[vi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


@njit(**JIT_OPTS)
def k_acwvf(win, params):
    p = params[0]
    mode = int(params[1])
    kind = int(params[2])
    lam = int(params[3])
    thr = params[4]
    gdd = params[5]
    n = win.shape[0]
    center = (n - 1) // 2
    s = 0.0
    for k in range(lam, lam + 3):
        yi = _cw_argmin(win, k, kind, gdd, p, mode)
        if kind == mk.KIND_MINKOWSKI:
            s += mk.l2_pair(win, yi, center)
        elif kind == mk.KIND_ANGULAR:
            s += mk.ang_pair(win, yi, center, mode)
        else:
            s += (mk.ang_pair(win, yi, center, mode) ** gdd
                  * mk.l2_pair(win, yi, center) ** (1.0 - gdd))
    if s > thr:
        bi = mk.argmin_cum_kind(win, kind, gdd, p, mode)
        return win[bi, 0], win[bi, 1], win[bi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


def cwvf(win, k, kind=None, gamma_dd=0.5, p=2.0, mode="approximate"):
    """Center-weighted rank-order filter with smoothing parameter k.

    k = 1 is the identity; k = (n + 1) / 2 reproduces the corresponding
    basic filter (vmf / bvdf / ddf, by distance kind).
    """
    if kind is None:
        kind = DistanceKind.minkowski()
    w = as_window(win)
    n = w.shape[0]
    c = (n + 1) // 2
    if not 1 <= k <= c:
        raise ValueError(f"k must be in [1, {c}]")
    params = np.array([p, float(resolve_acos_mode(mode)), float(kind.code),
                       float(k), gamma_dd])
    return np.array(k_cwvf(w, params))


def mcwvmf(win, w_center=0.5, p=2.0):
    """Vector median unless its cumulative distance fails to undercut the
    center pixel's by the factor w_center (then the center is kept)."""
    if not 0.0 <= w_center <= 1.0:
        raise ValueError("w_center must be in [0, 1]")
    ww = as_window(win)
    return np.array(k_mcwvmf(ww, np.array([p, 0.0, w_center])))


def _acwvf(win, kind, lam, thr, gamma_dd, p, mode):
    w = as_window(win)
    n = w.shape[0]
    c = (n + 1) // 2
    if not (1 <= lam <= c - 1 and lam + 2 <= c):
        raise ValueError(f"lambda must satisfy 1 <= lambda and lambda + 2 <= {c}")
    params = np.array([p, float(resolve_acos_mode(mode)), float(kind),
                       float(lam), thr, gamma_dd])
    return np.array(k_acwvf(w, params))


def acwvmf(win, lam=2, threshold=80.0, p=2.0, mode="approximate"):
    """Switch to the vector median when three center-weighted probes drift
    more than the threshold (summed L2) from the center pixel."""
    return _acwvf(win, mk.KIND_MINKOWSKI, lam, threshold, 0.5, p, mode)


def acwvdf(win, lam=2, threshold=0.19, mode="approximate"):
    """Angular twin of acwvmf (summed angles against the threshold)."""
    return _acwvf(win, mk.KIND_ANGULAR, lam, threshold, 0.5, 2.0, mode)


def acwddf(win, lam=2, threshold=10.8, gamma_dd=0.5, p=2.0, mode="approximate"):
    """Directional-distance twin of acwvmf."""
    return _acwvf(win, mk.KIND_DIRECTIONAL, lam, threshold, gamma_dd, p, mode)
