"""Nonlinear vector filters for impulsive noise removal from color images.

A toolkit of 48 classic order-statistics color filters behind one sliding
window interface, the impulsive noise models used to evaluate them, MAE /
MSE / NCD quality metrics, and a benchmark harness that aggregates
per-image average rankings.
"""

from .bench import BenchConfig, BenchRow, aggregate_rankings, run_benchmark
from .colormath import (DistanceKind, acos_fast, angular_distance, asin_fast,
                        cbrf_similarity, composite_distance, fuzzy_metric_m,
                        minkowski_distance)
from .filters import BENCH_FILTERS, FilterSpec, get_filter, registry_names
from .imagecore import (apply_filter, cumulative_distance, extract_window,
                        rank_window)
from .metrics import MetricReport, evaluate, mae, mse, ncd, srgb_to_lab, time_filter
from .noise import NoiseConfig, corrupt, corrupt_correlated, corrupt_uncorrelated
from .ppm import read_image, read_ppm, write_ppm

__version__ = "0.1.0"

__all__ = [
    "BENCH_FILTERS", "BenchConfig", "BenchRow", "DistanceKind", "FilterSpec",
    "MetricReport", "NoiseConfig", "acos_fast", "aggregate_rankings",
    "angular_distance", "apply_filter", "asin_fast", "cbrf_similarity",
    "composite_distance", "corrupt", "corrupt_correlated",
    "corrupt_uncorrelated", "cumulative_distance", "evaluate",
    "extract_window", "fuzzy_metric_m", "get_filter", "mae",
    "minkowski_distance", "mse", "ncd", "rank_window", "read_image",
    "read_ppm", "registry_names", "run_benchmark", "srgb_to_lab",
    "time_filter", "write_ppm",
]
