"""Switching filters: entropy, peer-group, and vector sigma families.

All of these output either the untouched center pixel or the output of a
basic rank-order filter, depending on a local noise-detection statistic.
The cheap statistics are evaluated first and the basic filter only runs
on the noisy branch.
"""

import math

import numpy as np
from numba import njit

from .. import _mathkern as mk
from .._mathkern import JIT_OPTS
from ..colormath import resolve_acos_mode
from ..imagecore import as_window

REF_MEAN = 0
REF_RANK = 1


@njit(**JIT_OPTS)
def k_entropy(win, params):
    p = params[0]
    mode = int(params[1])
    kind = int(params[2])
    gdd = params[3]
    n = win.shape[0]
    center = (n - 1) // 2
    m = mk.win_mean(win)
    dev = np.empty(n)
    total = 0.0
    for i in range(n):
        if kind == mk.KIND_MINKOWSKI:
            d = mk.l2_vec(m, win, i)
        elif kind == mk.KIND_ANGULAR:
            d = mk.ang_vec(m, win, i, mode)
        else:
            d = (mk.ang_vec(m, win, i, mode) ** gdd
                 * mk.l2_vec(m, win, i) ** (1.0 - gdd))
        dev[i] = d
        total += d
    if total < 1e-12:
        return win[center, 0], win[center, 1], win[center, 2]
    hsum = 0.0
    hc = 0.0
    pc = 0.0
    for i in range(n):
        pi = dev[i] / total
        h = -pi * math.log(pi) if pi > 0.0 else 0.0
        hsum += h
        if i == center:
            hc = h
            pc = pi
    if hsum <= 0.0:
        return win[center, 0], win[center, 1], win[center, 2]
    if pc > hc / hsum:
        bi = mk.argmin_cum_kind(win, kind, gdd, p, mode)
        return win[bi, 0], win[bi, 1], win[bi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


@njit(**JIT_OPTS)
def k_pgf(win, params):
    p = params[0]
    thr = params[2]
    n = win.shape[0]
    center = (n - 1) // 2
    c = np.empty(n)
    for i in range(n):
        c[i] = mk.lp_pair(win, center, i, p)
    c = np.sort(c)
    m = (int(math.sqrt(n)) + 1) // 2
    for i in range(m):
        if c[i + 1] - c[i] > thr:
            vi = mk.argmin_cum_lp(win, p)
            return win[vi, 0], win[vi, 1], win[vi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


@njit(**JIT_OPTS)
def k_fpgf(win, params):
    p = params[0]
    thr = params[2]
    m = int(params[3])
    n = win.shape[0]
    center = (n - 1) // 2
    count = 0
    for i in range(n):
        if i == center:
            continue
        if mk.lp_pair(win, center, i, p) <= thr:
            count += 1
            if count >= m:
                # peer group found: the center is declared clean
                return win[center, 0], win[center, 1], win[center, 2]
    vi = mk.argmin_cum_lp(win, p)
    return win[vi, 0], win[vi, 1], win[vi, 2]


@njit(**JIT_OPTS)
def k_sigma(win, params):
    p = params[0]
    mode = int(params[1])
    kind = int(params[2])
    lam = params[3]
    gdd = params[4]
    adaptive = int(params[5]) != 0
    ref = int(params[6])
    n = win.shape[0]
    center = (n - 1) // 2
    if adaptive:
        if ref == REF_MEAN:
            refv = mk.win_mean(win)
            denom = float(n)
            bi = -1
        else:
            bi = mk.argmin_cum_kind(win, kind, gdd, p, mode)
            refv = win[bi].copy()
            denom = float(n - 1)
        sq_ang = 0.0
        sq_mag = 0.0
        for i in range(n):
            if kind != mk.KIND_MINKOWSKI:
                a = mk.ang_vec(refv, win, i, mode)
                sq_ang += a * a
            if kind != mk.KIND_ANGULAR:
                d = mk.l2_vec(refv, win, i)
                sq_mag += d * d
        if kind == mk.KIND_MINKOWSKI:
            var = sq_mag / denom
        elif kind == mk.KIND_ANGULAR:
            var = sq_ang / denom
        else:
            var = (sq_ang / denom) ** gdd * (sq_mag / denom) ** (1.0 - gdd)
        sigma = math.sqrt(var)
        if sigma < 1e-12:
            return win[center, 0], win[center, 1], win[center, 2]
        if kind == mk.KIND_MINKOWSKI:
            pair = mk.l2_vec(refv, win, center)
        elif kind == mk.KIND_ANGULAR:
            pair = mk.ang_vec(refv, win, center, mode)
        else:
            pair = (mk.ang_vec(refv, win, center, mode) ** gdd
                    * mk.l2_vec(refv, win, center) ** (1.0 - gdd))
        if pair >= sigma:
            if bi < 0:
                bi = mk.argmin_cum_kind(win, kind, gdd, p, mode)
            return win[bi, 0], win[bi, 1], win[bi, 2]
        return win[center, 0], win[center, 1], win[center, 2]
    # non-adaptive: compare cumulative distances against a scaled reference
    if ref == REF_MEAN:
        refv = mk.win_mean(win)
        cum_ref = mk.cum_kind_vec(refv, win, kind, gdd, p, mode)
        factor = 1.0 + lam / n
        bi = -1
    else:
        bi = mk.argmin_cum_kind(win, kind, gdd, p, mode)
        cum_ref = mk.cum_kind(win, bi, kind, gdd, p, mode)
        factor = 1.0 + lam / (n - 1)
    if cum_ref < 1e-12:
        return win[center, 0], win[center, 1], win[center, 2]
    if mk.cum_kind(win, center, kind, gdd, p, mode) >= factor * cum_ref:
        if bi < 0:
            bi = mk.argmin_cum_kind(win, kind, gdd, p, mode)
        return win[bi, 0], win[bi, 1], win[bi, 2]
    return win[center, 0], win[center, 1], win[center, 2]


_ENTROPY_KINDS = {"evmf": mk.KIND_MINKOWSKI, "ebvdf": mk.KIND_ANGULAR,
                  "eddf": mk.KIND_DIRECTIONAL}


def entropy_vf(win, flavor="evmf", gamma_dd=0.5, p=2.0, mode="approximate"):
    """Entropy switching filter: replaces the center with the basic filter
    output when the center's share of the local contrast probability
    exceeds its share of the contrast entropy."""
    if flavor not in _ENTROPY_KINDS:
        raise ValueError(f"unknown entropy flavor {flavor!r}")
    w = as_window(win)
    params = np.array([p, float(resolve_acos_mode(mode)),
                       float(_ENTROPY_KINDS[flavor]), gamma_dd])
    return np.array(k_entropy(w, params))


def evmf(win, p=2.0, mode="approximate"):
    return entropy_vf(win, "evmf", p=p, mode=mode)


def ebvdf(win, mode="approximate"):
    return entropy_vf(win, "ebvdf", mode=mode)


def eddf(win, gamma_dd=0.5, p=2.0, mode="approximate"):
    return entropy_vf(win, "eddf", gamma_dd=gamma_dd, p=p, mode=mode)


def pgf(win, threshold=45.0, p=2.0):
    """Peer group filter: sorts distances to the center and fires on the
    first large gap among the (sqrt(n) + 1) / 2 smallest."""
    if threshold <= 0.0:
        raise ValueError("threshold must be positive")
    w = as_window(win)
    return np.array(k_pgf(w, np.array([p, 0.0, threshold])))


def fpgf(win, threshold=45.0, m=3, p=2.0):
    """Fast peer group filter: the center is clean as soon as m neighbors
    lie within the threshold (short-circuit; no sorting)."""
    w = as_window(win)
    n = w.shape[0]
    if not 1 <= m < n:
        raise ValueError(f"m must be in [1, {n - 1}]")
    if threshold <= 0.0:
        raise ValueError("threshold must be positive")
    return np.array(k_fpgf(w, np.array([p, 0.0, threshold, float(m)])))


_SIGMA_KINDS = {"vmf": mk.KIND_MINKOWSKI, "bvdf": mk.KIND_ANGULAR,
                "ddf": mk.KIND_DIRECTIONAL}


def sigma_vf(win, kind="vmf", reference="mean", adaptive=False, lam=4.0,
             gamma_dd=0.5, p=2.0, mode="approximate"):
    """Vector sigma filter: switches on an approximation of the local
    multivariate variance.

    Non-adaptive variants compare the center's cumulative distance against
    (1 + lam/n) (mean reference) or (1 + lam/(n-1)) (rank reference) times
    the reference's cumulative distance; adaptive variants compare the
    center's distance to the reference against the root mean squared
    distance.
    """
    if kind not in _SIGMA_KINDS:
        raise ValueError(f"unknown sigma kind {kind!r}")
    if reference not in ("mean", "rank"):
        raise ValueError(f"unknown sigma reference {reference!r}")
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    w = as_window(win)
    params = np.array([p, float(resolve_acos_mode(mode)),
                       float(_SIGMA_KINDS[kind]), lam, gamma_dd,
                       1.0 if adaptive else 0.0,
                       float(REF_MEAN if reference == "mean" else REF_RANK)])
    return np.array(k_sigma(w, params))
