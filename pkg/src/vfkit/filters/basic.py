"""Basic rank-order vector filters: VMF, ATVMF, BVDF, GVDF, DDF, CBRF.

Each filter reduces an ordered window of color vectors to one output
vector, ranking pixels by a cumulative distance to all their window peers.
"""

import numpy as np
from numba import njit

from .. import _mathkern as mk
from .._mathkern import JIT_OPTS
from ..colormath import resolve_acos_mode
from ..imagecore import as_window


@njit(**JIT_OPTS)
def k_vmf(win, params):
    p = params[0]
    i = mk.argmin_cum_lp(win, p)
    return win[i, 0], win[i, 1], win[i, 2]


@njit(**JIT_OPTS)
def k_atvmf(win, params):
    p = params[0]
    alpha = int(params[2])
    n = win.shape[0]
    keys = np.empty(n)
    for i in range(n):
        keys[i] = mk.cum_lp(win, i, p)
    order = mk.stable_order_asc(keys)
    m = 1 + alpha
    s0 = s1 = s2 = 0.0
    for r in range(m):
        i = order[r]
        s0 += win[i, 0]
        s1 += win[i, 1]
        s2 += win[i, 2]
    return s0 / m, s1 / m, s2 / m


@njit(**JIT_OPTS)
def k_bvdf(win, params):
    mode = int(params[1])
    i = mk.argmin_cum_ang(win, mode)
    return win[i, 0], win[i, 1], win[i, 2]


@njit(**JIT_OPTS)
def k_gvdf(win, params):
    mode = int(params[1])
    k = int(params[2])
    n = win.shape[0]
    keys = np.empty(n)
    for i in range(n):
        keys[i] = mk.cum_ang(win, i, mode)
    order = mk.stable_order_asc(keys)
    s0 = s1 = s2 = 0.0
    for r in range(k):
        i = order[r]
        s0 += win[i, 0]
        s1 += win[i, 1]
        s2 += win[i, 2]
    return s0 / k, s1 / k, s2 / k


@njit(**JIT_OPTS)
def k_ddf(win, params):
    p = params[0]
    mode = int(params[1])
    gamma = params[2]
    i = mk.argmin_cum_dir(win, gamma, p, mode)
    return win[i, 0], win[i, 1], win[i, 2]


@njit(**JIT_OPTS)
def k_cbrf(win, params):
    n = win.shape[0]
    best = 1e308
    bi = 0
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += mk.cbrf_pair(win, i, j)
        if s < best:
            best = s
            bi = i
    return win[bi, 0], win[bi, 1], win[bi, 2]


def vmf(win, p=2.0, mode="approximate"):
    """Window pixel with the least cumulative Minkowski distance."""
    w = as_window(win)
    return np.array(k_vmf(w, np.array([p, 0.0])))


def atvmf(win, alpha=None, p=2.0, mode="approximate"):
    """Mean of the 1 + alpha lowest-ranked pixels (alpha-trimmed output).

    alpha defaults to n // 2; alpha = 0 reproduces the plain vector median.
    The output is real-valued, not necessarily a window member.
    """
    w = as_window(win)
    n = w.shape[0]
    if alpha is None:
        alpha = n // 2
    if not 0 <= alpha <= n - 1:
        raise ValueError(f"alpha must be in [0, {n - 1}]")
    return np.array(k_atvmf(w, np.array([p, 0.0, float(alpha)])))


def bvdf(win, mode="approximate"):
    """Window pixel with the least cumulative angular distance."""
    w = as_window(win)
    return np.array(k_bvdf(w, np.array([2.0, float(resolve_acos_mode(mode))])))


def gvdf(win, k=None, mode="approximate"):
    """Mean of the k lowest angular-ranked pixels.

    The direction stage ranks by cumulative angle; the magnitude stage is
    an arithmetic mean over the kept set (k defaults to ceil(n / 2)).
    k = 1 reproduces bvdf.
    """
    w = as_window(win)
    n = w.shape[0]
    if k is None:
        k = (n + 1) // 2
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    return np.array(k_gvdf(w, np.array([2.0, float(resolve_acos_mode(mode)), float(k)])))


def ddf(win, gamma=0.5, p=2.0, mode="approximate"):
    """Pixel minimizing (sum A)^gamma * (sum Lp)^(1-gamma).

    gamma = 0 selects the same pixel as vmf, gamma = 1 the same as bvdf.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must be in [0, 1]")
    w = as_window(win)
    return np.array(k_ddf(w, np.array([p, float(resolve_acos_mode(mode)), gamma])))


def cbrf(win):
    """Pixel minimizing the summed difference-to-sum ratio to its peers."""
    w = as_window(win)
    return np.array(k_cbrf(w, np.array([2.0, 0.0])))
