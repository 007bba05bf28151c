"""Compiled scalar math primitives shared by every filter kernel.

Everything here is numba-compiled, allocation-light, and operates on
float64 windows of shape (n, 3) in row-major order with the center pixel
at index (n - 1) // 2.  The Python-facing wrappers live in
:mod:`vfkit.colormath` and :mod:`vfkit.imagecore`.
"""

import math

import numpy as np
from numba import njit

JIT_OPTS = dict(cache=True, nogil=True)

# acos evaluation modes
MODE_FAST = 0
MODE_REF = 1

# distance kinds
KIND_MINKOWSKI = 0
KIND_ANGULAR = 1
KIND_DIRECTIONAL = 2


@njit(**JIT_OPTS)
def asin_fast(x):
    """Cubic minimax approximation of arcsin on [0, 0.5].

    Max error ~6.8e-5 on that interval; callers must not feed it
    arguments outside [0, 0.5].
    """
    return -0.67921302e-4 + (1.003729762 + (-0.309031329e-1 + 0.2356774247 * x) * x) * x


@njit(**JIT_OPTS)
def acos_fast(x):
    """Fast arccos: cubic on [0, 0.5], asin identity above, reflection below 0.

    Input is clamped to [-1, 1].  Max error ~1.4e-4 on [0, 1]
    (~6.8e-5 on [0, 0.5]); the result can dip a hair below 0 near x = 1.
    """
    if x < 0.0:
        if x < -1.0:
            x = -1.0
        return math.pi - acos_fast(-x)
    if x > 1.0:
        x = 1.0
    if x <= 0.5:
        return 1.570864248 + (-1.003729768 + (0.309031763e-1 - 0.2356774861 * x) * x) * x
    # acos(x) = 2*asin(sqrt((1-x)/2)) avoids the singularity near 1
    return 2.0 * asin_fast(math.sqrt((1.0 - x) * 0.5))


@njit(**JIT_OPTS)
def acos_mode(x, mode):
    """arccos with the argument clamped to [-1, 1], fast or reference."""
    if mode == MODE_FAST:
        return acos_fast(x)
    if x > 1.0:
        x = 1.0
    elif x < -1.0:
        x = -1.0
    return math.acos(x)


@njit(**JIT_OPTS)
def lp_pair(win, i, j, p):
    """Minkowski distance between window rows i and j."""
    d0 = abs(win[i, 0] - win[j, 0])
    d1 = abs(win[i, 1] - win[j, 1])
    d2 = abs(win[i, 2] - win[j, 2])
    if p == 2.0:
        return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)
    if p == 1.0:
        return d0 + d1 + d2
    return (d0 ** p + d1 ** p + d2 ** p) ** (1.0 / p)


@njit(**JIT_OPTS)
def lp_vec(v, win, j, p):
    """Minkowski distance between an arbitrary vector and window row j."""
    d0 = abs(v[0] - win[j, 0])
    d1 = abs(v[1] - win[j, 1])
    d2 = abs(v[2] - win[j, 2])
    if p == 2.0:
        return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)
    if p == 1.0:
        return d0 + d1 + d2
    return (d0 ** p + d1 ** p + d2 ** p) ** (1.0 / p)


@njit(**JIT_OPTS)
def l2_pair(win, i, j):
    d0 = win[i, 0] - win[j, 0]
    d1 = win[i, 1] - win[j, 1]
    d2 = win[i, 2] - win[j, 2]
    return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)


@njit(**JIT_OPTS)
def l2_vec(v, win, j):
    d0 = v[0] - win[j, 0]
    d1 = v[1] - win[j, 1]
    d2 = v[2] - win[j, 2]
    return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)


@njit(**JIT_OPTS)
def angle3(a0, a1, a2, b0, b1, b2, mode):
    """Angle between two nonnegative 3-vectors, as scalar components.

    Zero-length vectors are direction-neutral (angle 0).  cos >= 1 maps to
    exactly 0 so identical/parallel vectors never produce a residual from
    the polynomial path, and the result is floored at 0 because the fast
    path can go slightly negative near cos = 1.
    """
    da = a0 * a0 + a1 * a1 + a2 * a2
    db = b0 * b0 + b1 * b1 + b2 * b2
    if da == 0.0 or db == 0.0:
        return 0.0
    c = (a0 * b0 + a1 * b1 + a2 * b2) / math.sqrt(da * db)
    if c >= 1.0:
        return 0.0
    r = acos_mode(c, mode)
    if r < 0.0:
        return 0.0
    return r


@njit(**JIT_OPTS)
def ang_pair(win, i, j, mode):
    return angle3(win[i, 0], win[i, 1], win[i, 2],
                  win[j, 0], win[j, 1], win[j, 2], mode)


@njit(**JIT_OPTS)
def ang_vec(v, win, j, mode):
    return angle3(v[0], v[1], v[2],
                  win[j, 0], win[j, 1], win[j, 2], mode)


@njit(**JIT_OPTS)
def dir_pair(win, i, j, gamma, p, mode):
    """A^gamma * Lp^(1-gamma) between rows i and j (0**0 == 1)."""
    return ang_pair(win, i, j, mode) ** gamma * lp_pair(win, i, j, p) ** (1.0 - gamma)


@njit(**JIT_OPTS)
def dir_vec(v, win, j, gamma, p, mode):
    return ang_vec(v, win, j, mode) ** gamma * lp_vec(v, win, j, p) ** (1.0 - gamma)


@njit(**JIT_OPTS)
def composite_pair(win, i, j):
    """Composite chromaticity+magnitude dissimilarity in [0, 1]-ish range.

    1 - cos(theta) * (1 - |na - nb| / max(na, nb)); 0 when both vectors are
    zero, 1 when exactly one is.  Equal vectors short-circuit to exactly 0
    (the cosine would otherwise carry a rounding residual).
    """
    if win[i, 0] == win[j, 0] and win[i, 1] == win[j, 1] and win[i, 2] == win[j, 2]:
        return 0.0
    da = win[i, 0] ** 2 + win[i, 1] ** 2 + win[i, 2] ** 2
    db = win[j, 0] ** 2 + win[j, 1] ** 2 + win[j, 2] ** 2
    if da == 0.0 and db == 0.0:
        return 0.0
    if da == 0.0 or db == 0.0:
        return 1.0
    na = math.sqrt(da)
    nb = math.sqrt(db)
    c = (win[i, 0] * win[j, 0] + win[i, 1] * win[j, 1] + win[i, 2] * win[j, 2]) / (na * nb)
    if c > 1.0:
        c = 1.0
    hi = na if na > nb else nb
    return 1.0 - c * (1.0 - abs(na - nb) / hi)


@njit(**JIT_OPTS)
def cbrf_pair(win, i, j):
    """Difference-to-sum ratio ||a-b|| / ||a+b||; 0 for two zero vectors."""
    d0 = win[i, 0] - win[j, 0]
    d1 = win[i, 1] - win[j, 1]
    d2 = win[i, 2] - win[j, 2]
    s0 = win[i, 0] + win[j, 0]
    s1 = win[i, 1] + win[j, 1]
    s2 = win[i, 2] + win[j, 2]
    num = d0 * d0 + d1 * d1 + d2 * d2
    den = s0 * s0 + s1 * s1 + s2 * s2
    if den == 0.0:
        return 0.0
    return math.sqrt(num / den)


@njit(**JIT_OPTS)
def cum_lp(win, i, p):
    """Cumulative Minkowski distance of row i to every window row."""
    n = win.shape[0]
    s = 0.0
    for j in range(n):
        s += lp_pair(win, i, j, p)
    return s


@njit(**JIT_OPTS)
def cum_lp_vec(v, win, p):
    n = win.shape[0]
    s = 0.0
    for j in range(n):
        s += lp_vec(v, win, j, p)
    return s


@njit(**JIT_OPTS)
def cum_ang(win, i, mode):
    n = win.shape[0]
    s = 0.0
    for j in range(n):
        s += ang_pair(win, i, j, mode)
    return s


@njit(**JIT_OPTS)
def cum_ang_vec(v, win, mode):
    n = win.shape[0]
    s = 0.0
    for j in range(n):
        s += ang_vec(v, win, j, mode)
    return s


@njit(**JIT_OPTS)
def cum_dir(win, i, gamma, p, mode):
    """(sum A)^gamma * (sum Lp)^(1-gamma), the aggregate-level blend."""
    return cum_ang(win, i, mode) ** gamma * cum_lp(win, i, p) ** (1.0 - gamma)


@njit(**JIT_OPTS)
def cum_dir_vec(v, win, gamma, p, mode):
    return cum_ang_vec(v, win, mode) ** gamma * cum_lp_vec(v, win, p) ** (1.0 - gamma)


@njit(**JIT_OPTS)
def cum_kind(win, i, kind, gamma, p, mode):
    if kind == KIND_MINKOWSKI:
        return cum_lp(win, i, p)
    if kind == KIND_ANGULAR:
        return cum_ang(win, i, mode)
    return cum_dir(win, i, gamma, p, mode)


@njit(**JIT_OPTS)
def cum_kind_vec(v, win, kind, gamma, p, mode):
    if kind == KIND_MINKOWSKI:
        return cum_lp_vec(v, win, p)
    if kind == KIND_ANGULAR:
        return cum_ang_vec(v, win, mode)
    return cum_dir_vec(v, win, gamma, p, mode)


@njit(**JIT_OPTS)
def pair_kind_vec(v, win, j, kind, gamma, p, mode):
    """Single pair distance of the given kind between v and row j."""
    if kind == KIND_MINKOWSKI:
        return lp_vec(v, win, j, p)
    if kind == KIND_ANGULAR:
        return ang_vec(v, win, j, mode)
    return dir_vec(v, win, j, gamma, p, mode)


@njit(**JIT_OPTS)
def argmin_cum_lp(win, p):
    """Index of the window pixel with minimal cumulative Minkowski distance."""
    n = win.shape[0]
    best = cum_lp(win, 0, p)
    bi = 0
    for i in range(1, n):
        s = cum_lp(win, i, p)
        if s < best:
            best = s
            bi = i
    return bi


@njit(**JIT_OPTS)
def argmin_cum_ang(win, mode):
    n = win.shape[0]
    best = cum_ang(win, 0, mode)
    bi = 0
    for i in range(1, n):
        s = cum_ang(win, i, mode)
        if s < best:
            best = s
            bi = i
    return bi


@njit(**JIT_OPTS)
def argmin_cum_dir(win, gamma, p, mode):
    n = win.shape[0]
    best = cum_dir(win, 0, gamma, p, mode)
    bi = 0
    for i in range(1, n):
        s = cum_dir(win, i, gamma, p, mode)
        if s < best:
            best = s
            bi = i
    return bi


@njit(**JIT_OPTS)
def argmin_cum_kind(win, kind, gamma, p, mode):
    if kind == KIND_MINKOWSKI:
        return argmin_cum_lp(win, p)
    if kind == KIND_ANGULAR:
        return argmin_cum_ang(win, mode)
    return argmin_cum_dir(win, gamma, p, mode)


@njit(**JIT_OPTS)
def fill_cum_kind(win, kind, gamma, p, mode, out):
    n = win.shape[0]
    for i in range(n):
        out[i] = cum_kind(win, i, kind, gamma, p, mode)


@njit(**JIT_OPTS)
def stable_order_asc(keys):
    """Indices sorting keys ascending; equal keys keep original order."""
    n = keys.size
    idx = np.empty(n, np.int64)
    for i in range(n):
        idx[i] = i
    for i in range(1, n):
        cur = idx[i]
        k = keys[cur]
        j = i - 1
        while j >= 0 and keys[idx[j]] > k:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = cur
    return idx


@njit(**JIT_OPTS)
def stable_order_desc(keys):
    """Indices sorting keys descending; equal keys keep original order."""
    n = keys.size
    idx = np.empty(n, np.int64)
    for i in range(n):
        idx[i] = i
    for i in range(1, n):
        cur = idx[i]
        k = keys[cur]
        j = i - 1
        while j >= 0 and keys[idx[j]] < k:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = cur
    return idx


@njit(**JIT_OPTS)
def win_mean(win):
    """Per-channel arithmetic mean of the window, as a fresh 3-vector."""
    n = win.shape[0]
    m = np.zeros(3)
    for i in range(n):
        m[0] += win[i, 0]
        m[1] += win[i, 1]
        m[2] += win[i, 2]
    m[0] /= n
    m[1] /= n
    m[2] /= n
    return m


