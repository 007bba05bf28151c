"""Hybrid vector filters: EXVMF, HDF, AHDF, the rational hybrids, KVMF.

These combine sub-filters of different types (vector medians over mask
subsets, directional selectors, the window mean) into one output vector,
which is generally not a window member.
"""

import math

import numpy as np
from numba import njit

from .. import _mathkern as mk
from .._mathkern import JIT_OPTS
from ..colormath import resolve_acos_mode
from ..imagecore import as_image, as_window

# rational hybrid flavors
R_VMRHF = 0
R_FVMRHF = 1
R_FVDRHF = 2
R_FDDRHF = 3


@njit(**JIT_OPTS)
def k_exvmf(win, params):
    p = params[0]
    vi = mk.argmin_cum_lp(win, p)
    lv = mk.cum_lp(win, vi, p)
    m = mk.win_mean(win)
    lm = mk.cum_lp_vec(m, win, p)
    if lm <= lv:
        return m[0], m[1], m[2]
    return win[vi, 0], win[vi, 1], win[vi, 2]


@njit(**JIT_OPTS)
def k_hdf(win, params):
    p = params[0]
    mode = int(params[1])
    vi = mk.argmin_cum_lp(win, p)
    bi = mk.argmin_cum_ang(win, mode)
    if win[vi, 0] == win[bi, 0] and win[vi, 1] == win[bi, 1] and win[vi, 2] == win[bi, 2]:
        return win[vi, 0], win[vi, 1], win[vi, 2]
    nb = math.sqrt(win[bi, 0] ** 2 + win[bi, 1] ** 2 + win[bi, 2] ** 2)
    if nb == 0.0:
        return win[vi, 0], win[vi, 1], win[vi, 2]
    nv = math.sqrt(win[vi, 0] ** 2 + win[vi, 1] ** 2 + win[vi, 2] ** 2)
    s = nv / nb
    return s * win[bi, 0], s * win[bi, 1], s * win[bi, 2]


@njit(**JIT_OPTS)
def k_ahdf(win, params):
    p = params[0]
    mode = int(params[1])
    vi = mk.argmin_cum_lp(win, p)
    bi = mk.argmin_cum_ang(win, mode)
    if win[vi, 0] == win[bi, 0] and win[vi, 1] == win[bi, 1] and win[vi, 2] == win[bi, 2]:
        return win[vi, 0], win[vi, 1], win[vi, 2]
    nb = math.sqrt(win[bi, 0] ** 2 + win[bi, 1] ** 2 + win[bi, 2] ** 2)
    if nb == 0.0:
        return win[vi, 0], win[vi, 1], win[vi, 2]
    nv = math.sqrt(win[vi, 0] ** 2 + win[vi, 1] ** 2 + win[vi, 2] ** 2)
    m = mk.win_mean(win)
    nm = math.sqrt(m[0] ** 2 + m[1] ** 2 + m[2] ** 2)
    out1 = np.empty(3)
    out2 = np.empty(3)
    s1 = nv / nb
    s2 = nm / nb
    for c in range(3):
        out1[c] = s1 * win[bi, c]
        out2[c] = s2 * win[bi, c]
    if mk.cum_lp_vec(out1, win, p) <= mk.cum_lp_vec(out2, win, p):
        return out1[0], out1[1], out1[2]
    return out2[0], out2[1], out2[2]


@njit(**JIT_OPTS)
def _subset_masks(n):
    """Index lists for the plus-shaped and diagonal-cross mask subsets."""
    w = int(math.sqrt(n))
    r = (w - 1) // 2
    plus = np.empty(n, np.int64)
    cross = np.empty(n, np.int64)
    np_ = nc = 0
    for k in range(n):
        row = k // w
        col = k % w
        if row == r or col == r:
            plus[np_] = k
            np_ += 1
        if abs(row - r) == abs(col - r):
            cross[nc] = k
            nc += 1
    return plus[:np_], cross[:nc]


@njit(**JIT_OPTS)
def _subset_vmf(win, idx, p):
    """Plain vector median restricted to the indexed subset."""
    m = idx.size
    best = 1e308
    bi = idx[0]
    for a in range(m):
        i = idx[a]
        s = 0.0
        for b in range(m):
            s += mk.lp_pair(win, i, idx[b], p)
        if s < best:
            best = s
            bi = i
    return bi


@njit(**JIT_OPTS)
def _center3_vmf(win, p):
    """Vector median over the full window with the center counted 3 times."""
    n = win.shape[0]
    center = (n - 1) // 2
    best = 1e308
    bi = 0
    for i in range(n):
        s = 0.0
        for j in range(n):
            d = mk.lp_pair(win, i, j, p)
            if j == center:
                d *= 3.0
            s += d
        if s < best:
            best = s
            bi = i
    return bi


@njit(**JIT_OPTS)
def _subset_fuzzy_avg(win, idx, dkind, gdd, p, mode, gfuzzy, boost_center, out):
    """Fuzzy weighted average over a mask subset.

    Weights are 2 / (1 + exp(t_i - t_min)) with t_i the subset cumulative
    distance raised to gfuzzy; the shift by t_min keeps exp in range (the
    unshifted form overflows for large cumulative distances).  When
    boost_center is set the center pixel's weight is tripled, mirroring
    the crisp center-weighted mask.
    """
    n = win.shape[0]
    center = (n - 1) // 2
    m = idx.size
    t = np.empty(m)
    tmin = 1e308
    for a in range(m):
        i = idx[a]
        if dkind == mk.KIND_MINKOWSKI:
            s = 0.0
            for b in range(m):
                s += mk.lp_pair(win, i, idx[b], p)
        elif dkind == mk.KIND_ANGULAR:
            s = 0.0
            for b in range(m):
                s += mk.ang_pair(win, i, idx[b], mode)
        else:
            sa = 0.0
            sl = 0.0
            for b in range(m):
                sa += mk.ang_pair(win, i, idx[b], mode)
                sl += mk.lp_pair(win, i, idx[b], p)
            s = sa ** gdd * sl ** (1.0 - gdd)
        ti = s ** gfuzzy
        t[a] = ti
        if ti < tmin:
            tmin = ti
    s0 = s1 = s2 = sw = 0.0
    for a in range(m):
        i = idx[a]
        wgt = 2.0 / (1.0 + math.exp(t[a] - tmin))
        if boost_center and i == center:
            wgt *= 3.0
        s0 += wgt * win[i, 0]
        s1 += wgt * win[i, 1]
        s2 += wgt * win[i, 2]
        sw += wgt
    out[0] = s0 / sw
    out[1] = s1 / sw
    out[2] = s2 / sw


@njit(**JIT_OPTS)
def k_rational(win, params):
    p = params[0]
    mode = int(params[1])
    a1 = params[2]
    a2 = params[3]
    a3 = params[4]
    b1 = params[5]
    b2 = params[6]
    gfuzzy = params[7]
    gdd = params[8]
    flavor = int(params[9])
    n = win.shape[0]
    plus, cross = _subset_masks(n)
    full = np.arange(n)
    phi1 = np.empty(3)
    phic = np.empty(3)
    phi2 = np.empty(3)
    if flavor == R_VMRHF:
        i1 = _subset_vmf(win, plus, p)
        ic = _center3_vmf(win, p)
        i2 = _subset_vmf(win, cross, p)
        for c in range(3):
            phi1[c] = win[i1, c]
            phic[c] = win[ic, c]
            phi2[c] = win[i2, c]
    else:
        if flavor == R_FVMRHF:
            dkind = mk.KIND_MINKOWSKI
        elif flavor == R_FVDRHF:
            dkind = mk.KIND_ANGULAR
        else:
            dkind = mk.KIND_DIRECTIONAL
        _subset_fuzzy_avg(win, plus, dkind, gdd, p, mode, gfuzzy, False, phi1)
        _subset_fuzzy_avg(win, full, dkind, gdd, p, mode, gfuzzy, True, phic)
        _subset_fuzzy_avg(win, cross, dkind, gdd, p, mode, gfuzzy, False, phi2)
    if flavor == R_FVDRHF:
        delta = mk.angle3(phi1[0], phi1[1], phi1[2], phi2[0], phi2[1], phi2[2], mode)
    elif flavor == R_FDDRHF:
        d0 = phi1[0] - phi2[0]
        d1 = phi1[1] - phi2[1]
        d2 = phi1[2] - phi2[2]
        mag = math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)
        ang = mk.angle3(phi1[0], phi1[1], phi1[2], phi2[0], phi2[1], phi2[2], mode)
        delta = ang ** gdd * mag ** (1.0 - gdd)
    else:
        d0 = phi1[0] - phi2[0]
        d1 = phi1[1] - phi2[1]
        d2 = phi1[2] - phi2[2]
        delta = math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)
    den = b1 + b2 * delta
    r0 = phic[0] + (a1 * phi1[0] + a2 * phic[0] + a3 * phi2[0]) / den
    r1 = phic[1] + (a1 * phi1[1] + a2 * phic[1] + a3 * phi2[1]) / den
    r2 = phic[2] + (a1 * phi1[2] + a2 * phic[2] + a3 * phi2[2]) / den
    return r0, r1, r2


@njit(**JIT_OPTS)
def k_kvmf(win, params):
    p = params[0]
    h = params[2]
    n = win.shape[0]
    center = (n - 1) // 2
    vi = mk.argmin_cum_lp(win, p)
    d0 = win[center, 0] - win[vi, 0]
    d1 = win[center, 1] - win[vi, 1]
    d2 = win[center, 2] - win[vi, 2]
    d = math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)
    mu = math.exp(-d / h)
    return (mu * win[center, 0] + (1.0 - mu) * win[vi, 0],
            mu * win[center, 1] + (1.0 - mu) * win[vi, 1],
            mu * win[center, 2] + (1.0 - mu) * win[vi, 2])


def estimate_kernel_width(img, beta=0.5):
    """Kernel width from the global pixel scatter around the image mean.

    h = beta * sqrt(sum ||x_i - mean||^2 / (8N)), floored at 1e-6 so that
    constant images stay well defined.  Scales linearly with uniform
    intensity scaling.
    """
    a = np.asarray(as_image(img), dtype=np.float64)
    mean = a.reshape(-1, 3).mean(axis=0)
    ssd = float(((a.reshape(-1, 3) - mean) ** 2).sum())
    n = a.shape[0] * a.shape[1]
    return max(beta * math.sqrt(ssd / (8.0 * n)), 1e-6)


def exvmf(win, p=2.0):
    """Window mean when it sits at least as centrally as the vector median,
    otherwise the vector median."""
    w = as_window(win)
    return np.array(k_exvmf(w, np.array([p, 0.0])))


def hdf(win, p=2.0, mode="approximate"):
    """Vector median magnitude imposed on the directional-filter direction."""
    w = as_window(win)
    return np.array(k_hdf(w, np.array([p, float(resolve_acos_mode(mode))])))


def ahdf(win, p=2.0, mode="approximate"):
    """Like hdf, but the magnitude comes from the vector median or the
    window mean, whichever lands more centrally."""
    w = as_window(win)
    return np.array(k_ahdf(w, np.array([p, float(resolve_acos_mode(mode))])))


_FLAVORS = {"vmrhf": R_VMRHF, "fvmrhf": R_FVMRHF, "fvdrhf": R_FVDRHF, "fddrhf": R_FDDRHF}


def rational_hybrid(win, flavor, alphas=(1.0, -2.0, 1.0), betas=(3.0, 3.0),
                    gamma_fuzzy=1.0, gamma_dd=0.5, p=2.0, mode="approximate"):
    """Three sub-filter outputs combined through a rational correction term.

    The sub-filters run on a plus mask, the full window with a tripled
    center, and a diagonal cross mask; the correction is scaled down by the
    distance between the two outer sub-filter outputs (edge sensing).
    The alpha coefficients must sum to zero so constant windows are fixed
    points.
    """
    if flavor not in _FLAVORS:
        raise ValueError(f"unknown rational hybrid flavor {flavor!r}")
    a1, a2, a3 = alphas
    if a1 + a2 + a3 != 0.0:
        raise ValueError("alpha coefficients must sum to 0")
    b1, b2 = betas
    if b1 <= 0.0 or b2 <= 0.0:
        raise ValueError("beta coefficients must be positive")
    w = as_window(win)
    params = np.array([p, float(resolve_acos_mode(mode)), a1, a2, a3, b1, b2,
                       gamma_fuzzy, gamma_dd, float(_FLAVORS[flavor])])
    return np.array(k_rational(w, params))


def vmrhf(win, **kw):
    """Rational hybrid over crisp vector-median sub-filters."""
    return rational_hybrid(win, "vmrhf", **kw)


def fvmrhf(win, **kw):
    """Rational hybrid over fuzzy Minkowski-weighted sub-filters."""
    return rational_hybrid(win, "fvmrhf", **kw)


def fvdrhf(win, **kw):
    """Rational hybrid over fuzzy angular sub-filters."""
    return rational_hybrid(win, "fvdrhf", **kw)


def fddrhf(win, **kw):
    """Rational hybrid over fuzzy directional-distance sub-filters."""
    return rational_hybrid(win, "fddrhf", **kw)


def kvmf(win, h, p=2.0):
    """Blend of the center pixel and the vector median, weighted by a
    Laplacian kernel of their distance (h is the kernel width)."""
    if h <= 0.0:
        raise ValueError("kernel width h must be positive")
    w = as_window(win)
    return np.array(k_kvmf(w, np.array([p, 0.0, h])))
