"""Filter registry: name -> kernel id, parameter handling, family tags.

The 48 benchmark filters live in six family modules; this package maps
their registry names to compiled kernel ids and builds the per-filter
parameter vectors (author-recommended defaults, overridable per call).
A few extra utility names (``none``, ``cwvmf``, ``cwvdf``, ``cwddf``) are
registered for the CLI but are not part of the benchmark set.
"""

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .. import _mathkern as mk
from ..colormath import fuzzy_q_table, resolve_acos_mode
from . import _dispatch as dp
from . import basic, fuzzy, hybrid, misc, switching, weighted  # noqa: F401 (re-export)


class UnknownFilterError(ValueError):
    """Raised when a filter name is not in the registry."""


@dataclass(frozen=True)
class FilterSpec:
    """A registered filter name plus parameter overrides."""

    name: str
    params: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class FilterDef:
    name: str
    family: str
    fid: int
    build: Callable
    switching: bool = False
    allowed: tuple = ()


def _head(d):
    p = float(d.pop("p", 2.0))
    if p < 1.0:
        raise ValueError("Minkowski exponent p must be >= 1")
    mode = float(resolve_acos_mode(d.pop("acos", d.pop("mode", "approximate"))))
    return [p, mode]


def _check_empty(name, d):
    if d:
        raise ValueError(f"unknown parameter(s) for {name}: {sorted(d)}")


def _simple(name, extra=()):
    """Builder for filters taking only p/acos plus fixed extra tail values."""
    def build(d, n, img):
        head = _head(d)
        _check_empty(name, d)
        return np.array(head + list(extra)), None
    return build


def _build_atvmf(d, n, img):
    head = _head(d)
    alpha = int(d.pop("alpha", n // 2))
    _check_empty("atvmf", d)
    if not 0 <= alpha <= n - 1:
        raise ValueError(f"alpha must be in [0, {n - 1}]")
    return np.array(head + [float(alpha)]), None


def _build_gvdf(d, n, img):
    head = _head(d)
    k = int(d.pop("k", (n + 1) // 2))
    _check_empty("gvdf", d)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    return np.array(head + [float(k)]), None


def _build_ddf(d, n, img):
    head = _head(d)
    gamma = float(d.pop("gamma", 0.5))
    _check_empty("ddf", d)
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must be in [0, 1]")
    return np.array(head + [gamma]), None


def _build_fuzzy(name, wkind, gamma, beta, dkind=mk.KIND_ANGULAR):
    def build(d, n, img):
        head = _head(d)
        g = float(d.pop("gamma", gamma))
        b = float(d.pop("beta", beta))
        _check_empty(name, d)
        if g <= 0.0 or b <= 0.0:
            raise ValueError("gamma and beta must be positive")
        return np.array(head + [float(wkind), g, b, float(dkind), 0.5]), None
    return build


def _build_rational(flavor):
    def build(d, n, img):
        head = _head(d)
        a1 = float(d.pop("alpha1", 1.0))
        a2 = float(d.pop("alpha2", -2.0))
        a3 = float(d.pop("alpha3", 1.0))
        b1 = float(d.pop("beta1", 3.0))
        b2 = float(d.pop("beta2", 3.0))
        gf = float(d.pop("gamma", 1.0))
        gdd = float(d.pop("gamma_dd", 0.5))
        _check_empty(flavor, d)
        if a1 + a2 + a3 != 0.0:
            raise ValueError("alpha coefficients must sum to 0")
        if b1 <= 0.0 or b2 <= 0.0:
            raise ValueError("beta coefficients must be positive")
        fl = {"vmrhf": hybrid.R_VMRHF, "fvmrhf": hybrid.R_FVMRHF,
              "fvdrhf": hybrid.R_FVDRHF, "fddrhf": hybrid.R_FDDRHF}[flavor]
        return np.array(head + [a1, a2, a3, b1, b2, gf, gdd, float(fl)]), None
    return build


def _build_kvmf(d, n, img):
    head = _head(d)
    beta = float(d.pop("beta", 0.5))
    h = d.pop("h", None)
    _check_empty("kvmf", d)
    if h is None:
        if img is None:
            raise ValueError("kvmf needs an image to estimate h, or an explicit h")
        h = hybrid.estimate_kernel_width(img, beta)
    h = float(h)
    if h <= 0.0:
        raise ValueError("kernel width h must be positive")
    return np.array(head + [h]), None


def _build_mcwvmf(d, n, img):
    head = _head(d)
    w = float(d.pop("w", 0.5))
    _check_empty("mcwvmf", d)
    if not 0.0 <= w <= 1.0:
        raise ValueError("center weight w must be in [0, 1]")
    return np.array(head + [w]), None


def _build_acwvf(name, kind, thr):
    def build(d, n, img):
        head = _head(d)
        lam = int(d.pop("lambda", d.pop("lam", 2)))
        t = float(d.pop("t", d.pop("threshold", thr)))
        gdd = float(d.pop("gamma", 0.5))
        _check_empty(name, d)
        c = (n + 1) // 2
        if not (1 <= lam and lam + 2 <= c):
            raise ValueError(f"lambda must satisfy 1 <= lambda and lambda + 2 <= {c}")
        return np.array(head + [float(kind), float(lam), t, gdd]), None
    return build


def _build_cwvf(name, kind):
    def build(d, n, img):
        head = _head(d)
        c = (n + 1) // 2
        k = int(d.pop("k", max(1, c - 1)))
        gdd = float(d.pop("gamma", 0.5))
        _check_empty(name, d)
        if not 1 <= k <= c:
            raise ValueError(f"k must be in [1, {c}]")
        return np.array(head + [float(kind), float(k), gdd]), None
    return build


def _build_entropy(name, kind):
    def build(d, n, img):
        head = _head(d)
        gdd = float(d.pop("gamma", 0.5))
        _check_empty(name, d)
        return np.array(head + [float(kind), gdd]), None
    return build


def _build_pgf(d, n, img):
    head = _head(d)
    t = float(d.pop("t", d.pop("threshold", 45.0)))
    _check_empty("pgf", d)
    if t <= 0.0:
        raise ValueError("threshold must be positive")
    return np.array(head + [t]), None


def _build_fpgf(d, n, img):
    head = _head(d)
    t = float(d.pop("t", d.pop("threshold", 45.0)))
    m = int(d.pop("m", 3))
    _check_empty("fpgf", d)
    if t <= 0.0:
        raise ValueError("threshold must be positive")
    if not 1 <= m < n:
        raise ValueError(f"m must be in [1, {n - 1}]")
    return np.array(head + [t, float(m)]), None


def _build_sigma(name, kind, adaptive, ref):
    def build(d, n, img):
        head = _head(d)
        lam = float(d.pop("lambda", d.pop("lam", 4.0)))
        gdd = float(d.pop("gamma", 0.5))
        _check_empty(name, d)
        if lam <= 0.0:
            raise ValueError("lambda must be positive")
        return np.array(head + [float(kind), lam, gdd,
                                1.0 if adaptive else 0.0, float(ref)]), None
    return build


def _build_vsdromf(d, n, img):
    head = _head(d)
    t1 = float(d.pop("t1", 35.0))
    t2 = float(d.pop("t2", 40.0))
    t3 = float(d.pop("t3", 45.0))
    t4 = float(d.pop("t4", 50.0))
    _check_empty("vsdromf", d)
    if not (0.0 < t1 <= t2 <= t3 <= t4):
        raise ValueError("thresholds must be positive and non-decreasing")
    return np.array(head + [t1, t2, t3, t4]), None


def _build_amnf(name, kernel):
    def build(d, n, img):
        head = _head(d)
        k = float(d.pop("k", 0.33))
        c = float(d.pop("c", 3.0))
        _check_empty(name, d)
        if k <= 0.0:
            raise ValueError("k must be positive")
        return np.array(head + [k, c, float(kernel)]), None
    return build


def _build_fmvmf(d, n, img):
    head = _head(d)
    t = float(d.pop("t", d.pop("threshold", 0.75)))
    _check_empty("fmvmf", d)
    if t < 0.0:
        raise ValueError("threshold must be nonnegative")
    return np.array(head + [t]), None


def _build_avf(name, kind, thr):
    def build(d, n, img):
        head = _head(d)
        t = float(d.pop("t", d.pop("threshold", thr)))
        k = int(d.pop("k", (n + 1) // 2))
        _check_empty(name, d)
        if not 1 <= k <= n:
            raise ValueError(f"k must be in [1, {n}]")
        return np.array(head + [float(kind), t, float(k)]), None
    return build


def _build_ffnrf(d, n, img):
    head = _head(d)
    k_off = float(d.pop("K", d.pop("k_off", 1024.0)))
    alpha = float(d.pop("alpha", 3.5))
    _check_empty("ffnrf", d)
    if k_off <= 0.0 or alpha <= 0.0:
        raise ValueError("K and alpha must be positive")
    return np.array(head + [k_off, alpha]), fuzzy_q_table(k_off, alpha)


def _d(name, family, fid, build, switching=False):
    return FilterDef(name, family, fid, build, switching)


_DEFS = [
    # basic
    _d("vmf", "basic", dp.FID_VMF, _simple("vmf")),
    _d("atvmf", "basic", dp.FID_ATVMF, _build_atvmf),
    _d("bvdf", "basic", dp.FID_BVDF, _simple("bvdf")),
    _d("gvdf", "basic", dp.FID_GVDF, _build_gvdf),
    _d("ddf", "basic", dp.FID_DDF, _build_ddf),
    _d("cbrf", "basic", dp.FID_CBRF, _simple("cbrf")),
    # fuzzy
    _d("fvmf", "fuzzy", dp.FID_FVMF, _build_fuzzy("fvmf", fuzzy.W_EXPONENTIAL, 0.5, 1.0)),
    _d("fvdf", "fuzzy", dp.FID_FVDF, _build_fuzzy("fvdf", fuzzy.W_SIGMOIDAL, 1.0, 2.0)),
    _d("annf", "fuzzy", dp.FID_ANNF,
       _build_fuzzy("annf", fuzzy.W_NEAREST_NEIGHBOR, 1.0, 1.0)),
    _d("annmf", "fuzzy", dp.FID_ANNMF,
       _build_fuzzy("annmf", fuzzy.W_COMPOSITE_NN, 1.0, 1.0)),
    _d("fovmf", "fuzzy", dp.FID_FOVMF, _build_fuzzy("fovmf", fuzzy.W_EXPONENTIAL, 0.5, 1.0)),
    _d("fovdf", "fuzzy", dp.FID_FOVDF, _build_fuzzy("fovdf", fuzzy.W_SIGMOIDAL, 1.0, 2.0)),
    # hybrid
    _d("exvmf", "hybrid", dp.FID_EXVMF, _simple("exvmf")),
    _d("hdf", "hybrid", dp.FID_HDF, _simple("hdf")),
    _d("ahdf", "hybrid", dp.FID_AHDF, _simple("ahdf")),
    _d("vmrhf", "hybrid", dp.FID_RATIONAL, _build_rational("vmrhf")),
    _d("fvmrhf", "hybrid", dp.FID_RATIONAL, _build_rational("fvmrhf")),
    _d("fvdrhf", "hybrid", dp.FID_RATIONAL, _build_rational("fvdrhf")),
    _d("fddrhf", "hybrid", dp.FID_RATIONAL, _build_rational("fddrhf")),
    _d("kvmf", "hybrid", dp.FID_KVMF, _build_kvmf),
    # center-weighted
    _d("mcwvmf", "center_weighted", dp.FID_MCWVMF, _build_mcwvmf, switching=True),
    _d("acwvmf", "center_weighted", dp.FID_ACWVF,
       _build_acwvf("acwvmf", mk.KIND_MINKOWSKI, 80.0), switching=True),
    _d("acwvdf", "center_weighted", dp.FID_ACWVF,
       _build_acwvf("acwvdf", mk.KIND_ANGULAR, 0.19), switching=True),
    _d("acwddf", "center_weighted", dp.FID_ACWVF,
       _build_acwvf("acwddf", mk.KIND_DIRECTIONAL, 10.8), switching=True),
    # entropy
    _d("evmf", "entropy", dp.FID_ENTROPY,
       _build_entropy("evmf", mk.KIND_MINKOWSKI), switching=True),
    _d("ebvdf", "entropy", dp.FID_ENTROPY,
       _build_entropy("ebvdf", mk.KIND_ANGULAR), switching=True),
    _d("eddf", "entropy", dp.FID_ENTROPY,
       _build_entropy("eddf", mk.KIND_DIRECTIONAL), switching=True),
    # peer group
    _d("pgf", "peer_group", dp.FID_PGF, _build_pgf, switching=True),
    _d("fpgf", "peer_group", dp.FID_FPGF, _build_fpgf, switching=True),
    # sigma
    _d("svmf_mean", "sigma", dp.FID_SIGMA,
       _build_sigma("svmf_mean", mk.KIND_MINKOWSKI, False, switching.REF_MEAN), switching=True),
    _d("svmf_rank", "sigma", dp.FID_SIGMA,
       _build_sigma("svmf_rank", mk.KIND_MINKOWSKI, False, switching.REF_RANK), switching=True),
    _d("sbvdf_mean", "sigma", dp.FID_SIGMA,
       _build_sigma("sbvdf_mean", mk.KIND_ANGULAR, False, switching.REF_MEAN), switching=True),
    _d("sbvdf_rank", "sigma", dp.FID_SIGMA,
       _build_sigma("sbvdf_rank", mk.KIND_ANGULAR, False, switching.REF_RANK), switching=True),
    _d("sddf_mean", "sigma", dp.FID_SIGMA,
       _build_sigma("sddf_mean", mk.KIND_DIRECTIONAL, False, switching.REF_MEAN), switching=True),
    _d("sddf_rank", "sigma", dp.FID_SIGMA,
       _build_sigma("sddf_rank", mk.KIND_DIRECTIONAL, False, switching.REF_RANK), switching=True),
    _d("asvmf_mean", "sigma", dp.FID_SIGMA,
       _build_sigma("asvmf_mean", mk.KIND_MINKOWSKI, True, switching.REF_MEAN), switching=True),
    _d("asvmf_rank", "sigma", dp.FID_SIGMA,
       _build_sigma("asvmf_rank", mk.KIND_MINKOWSKI, True, switching.REF_RANK), switching=True),
    _d("asbvdf_mean", "sigma", dp.FID_SIGMA,
       _build_sigma("asbvdf_mean", mk.KIND_ANGULAR, True, switching.REF_MEAN), switching=True),
    _d("asbvdf_rank", "sigma", dp.FID_SIGMA,
       _build_sigma("asbvdf_rank", mk.KIND_ANGULAR, True, switching.REF_RANK), switching=True),
    _d("asddf_mean", "sigma", dp.FID_SIGMA,
       _build_sigma("asddf_mean", mk.KIND_DIRECTIONAL, True, switching.REF_MEAN), switching=True),
    _d("asddf_rank", "sigma", dp.FID_SIGMA,
       _build_sigma("asddf_rank", mk.KIND_DIRECTIONAL, True, switching.REF_RANK), switching=True),
    # miscellaneous
    _d("vsdromf", "misc", dp.FID_VSDROMF, _build_vsdromf, switching=True),
    _d("amnfe", "misc", dp.FID_AMNF, _build_amnf("amnfe", misc.KERNEL_EXPONENTIAL)),
    _d("amnfg", "misc", dp.FID_AMNF, _build_amnf("amnfg", misc.KERNEL_GAUSSIAN)),
    _d("fmvmf", "misc", dp.FID_FMVMF, _build_fmvmf, switching=True),
    _d("avmf", "misc", dp.FID_AVF,
       _build_avf("avmf", mk.KIND_MINKOWSKI, 100.0), switching=True),
    _d("abvdf", "misc", dp.FID_AVF,
       _build_avf("abvdf", mk.KIND_ANGULAR, 0.16), switching=True),
    _d("ffnrf", "misc", dp.FID_FFNRF, _build_ffnrf, switching=True),
]

# utility names, not part of the benchmark set
_EXTRA_DEFS = [
    _d("none", "utility", dp.FID_IDENTITY, _simple("none")),
    _d("cwvmf", "utility", dp.FID_CWVF, _build_cwvf("cwvmf", mk.KIND_MINKOWSKI)),
    _d("cwvdf", "utility", dp.FID_CWVF, _build_cwvf("cwvdf", mk.KIND_ANGULAR)),
    _d("cwddf", "utility", dp.FID_CWVF, _build_cwvf("cwddf", mk.KIND_DIRECTIONAL)),
]

REGISTRY = {d.name: d for d in _DEFS + _EXTRA_DEFS}
BENCH_FILTERS = [d.name for d in _DEFS]
assert len(BENCH_FILTERS) == 48


def get_filter(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownFilterError(f"unknown filter {name!r}") from None


def registry_names(include_extras=False):
    """The 48 benchmark filter names (plus utility names on request)."""
    if include_extras:
        return list(REGISTRY)
    return list(BENCH_FILTERS)


def resolve_spec(spec, n, img=None):
    """Turn a FilterSpec (or bare name) into (fid, params vector, q-table)."""
    if isinstance(spec, str):
        spec = FilterSpec(spec)
    fdef = get_filter(spec.name)
    params, qtab = fdef.build(dict(spec.params), n, img)
    if qtab is None:
        qtab = dp._DUMMY_QTAB
    return fdef.fid, params, qtab
