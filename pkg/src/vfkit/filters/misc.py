"""Miscellaneous vector filters: VSDROMF, AMNF(E/G), FMVMF, AVMF, ABVDF, FFNRF."""

import math

import numpy as np
from numba import njit

from .. import _mathkern as mk
from .._mathkern import JIT_OPTS
from ..colormath import fuzzy_q_table, resolve_acos_mode
from ..imagecore import as_window

KERNEL_EXPONENTIAL = 0
KERNEL_GAUSSIAN = 1


@njit(**JIT_OPTS)
def k_vsdromf(win, params):
    p = params[0]
    n = win.shape[0]
    center = (n - 1) // 2
    keys = np.empty(n)
    for i in range(n):
        keys[i] = mk.cum_lp(win, i, p)
    order = mk.stable_order_asc(keys)
    for i in range(4):
        if mk.lp_pair(win, center, order[i], p) > params[2 + i]:
            vi = order[0]
            return win[vi, 0], win[vi, 1], win[vi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


@njit(**JIT_OPTS)
def k_amnf(win, params):
    kpar = params[2]
    cdim = params[3]
    kernel = int(params[4])
    n = win.shape[0]
    center = (n - 1) // 2
    scale = n ** (-kpar / cdim)
    s0 = s1 = s2 = su = 0.0
    for i in range(n):
        l1sum = 0.0
        for j in range(n):
            l1sum += (abs(win[i, 0] - win[j, 0]) + abs(win[i, 1] - win[j, 1])
                      + abs(win[i, 2] - win[j, 2]))
        h = scale * l1sum
        if h < 1e-6:
            h = 1e-6
        z0 = (win[center, 0] - win[i, 0]) / h
        z1 = (win[center, 1] - win[i, 1]) / h
        z2 = (win[center, 2] - win[i, 2]) / h
        zz = z0 * z0 + z1 * z1 + z2 * z2
        if kernel == KERNEL_EXPONENTIAL:
            kv = math.exp(-math.sqrt(zz))
        else:
            kv = math.exp(-0.5 * zz)
        u = h ** (-cdim) * kv
        s0 += u * win[i, 0]
        s1 += u * win[i, 1]
        s2 += u * win[i, 2]
        su += u
    return s0 / su, s1 / su, s2 / su


@njit(**JIT_OPTS)
def k_fmvmf(win, params):
    p = params[0]
    thr = params[2]
    n = win.shape[0]
    center = (n - 1) // 2
    best = 1e308
    bi = 0
    for k in range(n):
        s = 0.0
        for i in range(n):
            if i == center:
                continue
            s += mk.lp_pair(win, k, i, p)
        if s < best:
            best = s
            bi = k
    center_sum = 0.0
    for i in range(n):
        center_sum += mk.lp_pair(win, center, i, p)
    if center_sum - best > thr:
        return win[bi, 0], win[bi, 1], win[bi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


@njit(**JIT_OPTS)
def k_avf(win, params):
    p = params[0]
    mode = int(params[1])
    kind = int(params[2])
    thr = params[3]
    k = int(params[4])
    n = win.shape[0]
    center = (n - 1) // 2
    keys = np.empty(n)
    for i in range(n):
        keys[i] = mk.cum_kind(win, i, kind, 0.5, p, mode)
    order = mk.stable_order_asc(keys)
    m = np.zeros(3)
    for r in range(k):
        i = order[r]
        m[0] += win[i, 0]
        m[1] += win[i, 1]
        m[2] += win[i, 2]
    m[0] /= k
    m[1] /= k
    m[2] /= k
    if kind == mk.KIND_MINKOWSKI:
        d = mk.l2_vec(m, win, center)
    else:
        d = mk.ang_vec(m, win, center, mode)
    if d > thr:
        vi = order[0]
        return win[vi, 0], win[vi, 1], win[vi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


@njit(**JIT_OPTS)
def _qtab_index(v):
    i = int(v + 0.5)
    if i < 0:
        return 0
    if i > 255:
        return 255
    return i


@njit(**JIT_OPTS)
def _fuzzy_sim_tab(win, i, j, qtab):
    return (qtab[_qtab_index(win[i, 0]), _qtab_index(win[j, 0])]
            * qtab[_qtab_index(win[i, 1]), _qtab_index(win[j, 1])]
            * qtab[_qtab_index(win[i, 2]), _qtab_index(win[j, 2])])


@njit(**JIT_OPTS)
def k_ffnrf(win, params, qtab):
    n = win.shape[0]
    center = (n - 1) // 2
    best = -1.0
    bi = 0
    for k in range(n):
        s = 0.0
        for i in range(n):
            if i == center:
                continue
            s += _fuzzy_sim_tab(win, k, i, qtab)
        if s > best:
            best = s
            bi = k
    center_sim = 0.0
    for i in range(n):
        center_sim += _fuzzy_sim_tab(win, center, i, qtab)
    # the center sum keeps its own unit self-term, privileging the center
    if center_sim < best:
        return win[bi, 0], win[bi, 1], win[bi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


def vsdromf(win, thresholds=(35.0, 40.0, 45.0, 50.0), p=2.0):
    """Rank-ordered switching filter with four increasing thresholds.

    The center is replaced by the lowest-ranked pixel as soon as its
    distance to the i-th ranked pixel exceeds the i-th threshold.
    """
    t1, t2, t3, t4 = (float(t) for t in thresholds)
    if not (0.0 < t1 <= t2 <= t3 <= t4):
        raise ValueError("thresholds must be positive and non-decreasing")
    w = as_window(win)
    return np.array(k_vsdromf(w, np.array([p, 0.0, t1, t2, t3, t4])))


def amnf(win, kernel="exponential", k=0.33, c=3):
    """Non-parametric kernel regression toward the center pixel.

    Each pixel gets bandwidth h_i from its summed L1 distances and weight
    h_i^-c * K((x_C - x_i) / h_i); the output is the weighted average.
    """
    kinds = {"exponential": KERNEL_EXPONENTIAL, "gaussian": KERNEL_GAUSSIAN}
    if kernel not in kinds:
        raise ValueError(f"unknown kernel {kernel!r}")
    if k <= 0.0:
        raise ValueError("k must be positive")
    w = as_window(win)
    return np.array(k_amnf(w, np.array([2.0, 0.0, k, float(c), float(kinds[kernel])])))


def amnfe(win, k=0.33, c=3):
    return amnf(win, "exponential", k, c)


def amnfg(win, k=0.33, c=3):
    return amnf(win, "gaussian", k, c)


def fmvmf(win, threshold=0.75, p=2.0):
    """Center-excluding vector median with a replacement margin.

    The candidate minimizing the cumulative distance to all non-center
    pixels replaces the center only when it undercuts the center's own
    cumulative distance by more than the threshold.
    """
    if threshold < 0.0:
        raise ValueError("threshold must be nonnegative")
    w = as_window(win)
    return np.array(k_fmvmf(w, np.array([p, 0.0, threshold])))


def avmf(win, threshold=100.0, k=None, p=2.0):
    """Switches to the vector median when the center strays more than the
    threshold from the mean of the k lowest-ranked pixels."""
    w = as_window(win)
    n = w.shape[0]
    if k is None:
        k = (n + 1) // 2
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    params = np.array([p, 0.0, float(mk.KIND_MINKOWSKI), threshold, float(k)])
    return np.array(k_avf(w, params))


def abvdf(win, threshold=0.16, k=None, mode="approximate"):
    """Angular twin of avmf: the test statistic is the angle between the
    center and the low-rank mean."""
    w = as_window(win)
    n = w.shape[0]
    if k is None:
        k = (n + 1) // 2
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    params = np.array([2.0, float(resolve_acos_mode(mode)),
                       float(mk.KIND_ANGULAR), threshold, float(k)])
    return np.array(k_avf(w, params))


def ffnrf(win, k_off=1024.0, alpha=3.5):
    """Fuzzy-similarity switching filter over a precomputed 256x256 table.

    Replaces the center with the pixel maximizing the summed similarity to
    all non-center pixels, when that sum beats the center's own (which
    keeps its unit self-term).  Channels must be integer-valued in [0, 255].
    """
    w = as_window(win)
    qtab = fuzzy_q_table(k_off, alpha)
    return np.array(k_ffnrf(w, np.array([2.0, 0.0]), qtab))
