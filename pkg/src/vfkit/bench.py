"""Benchmark orchestration: corrupt, filter, measure, and rank.

One noise realization per (image, model, level) is shared by every filter,
and its seed is derived from the master seed and those coordinates alone
(SHA-256 of ``"<seed>|<image id>|<model>|<level>"`` with the level in %.6g,
first 8 bytes big-endian), so adding images never reshuffles existing
realizations.  Everything except wall-clock timings is deterministic.
"""

import csv
import hashlib
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .filters import BENCH_FILTERS, FilterSpec, get_filter
from .imagecore import apply_filter
from .metrics import mae, mse, ncd, time_filter
from .noise import NoiseConfig, corrupt
from .ppm import read_image

log = logging.getLogger(__name__)

CSV_HEADER = ["image", "filter", "model", "level", "seed", "mae", "mse", "ncd", "time_ms"]
RANK_HEADER = ["model", "level", "criterion", "filter", "avg_rank"]
CRITERIA = ["mae", "mse", "ncd", "time"]


class BenchError(RuntimeError):
    """Benchmark could not produce any results."""


@dataclass(frozen=True)
class BenchConfig:
    images: tuple
    filters: tuple = tuple(BENCH_FILTERS)
    models: tuple = ("uncorrelated", "correlated")
    levels: tuple = (0.05, 0.10, 0.15)
    seed: int = 0
    window: int = 3
    p: float = 2.0
    acos: str = "approximate"
    phi1: float = 0.25
    phi2: float = 0.25
    phi3: float = 0.25
    timed: bool = False
    jobs: int = 1

    def __post_init__(self):
        if not self.images:
            raise ValueError("no input images")
        if not self.filters:
            raise ValueError("no filters selected")
        for lv in self.levels:
            if not 0.0 < lv < 1.0:
                raise ValueError(f"noise level {lv} outside (0, 1)")
        for name in self.filters:
            get_filter(name)
        if self.timed and self.jobs > 1:
            raise ValueError("timed runs are single-threaded; drop --jobs or --timed")


@dataclass(frozen=True)
class BenchRow:
    image: str
    filter: str
    model: str
    level: float
    seed: int
    mae: float
    mse: float
    ncd: float
    time_ms: float


def derive_seed(master_seed, image_id, model, level):
    """Per-realization seed; independent of image order and filter list."""
    key = f"{master_seed}|{image_id}|{model}|{level:.6g}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def _measure(clean, noisy, name, cfg):
    spec = FilterSpec(name, {"p": cfg.p, "acos": cfg.acos})
    if cfg.timed:
        out, elapsed_ms = time_filter(noisy, spec, cfg.window)
    else:
        t0 = time.perf_counter()
        out = apply_filter(noisy, spec, cfg.window)
        elapsed_ms = (time.perf_counter() - t0) * 1e3
    return mae(clean, out), mse(clean, out), ncd(clean, out), elapsed_ms


def run_benchmark(cfg, progress=None):
    """All (image, model, level, filter) rows, in deterministic order.

    Unreadable images are reported and skipped; an entirely empty run is
    an error.  ``progress`` is an optional callable taking a status line.
    """
    rows = []
    errors = []
    processed = 0
    for path in sorted(str(p) for p in cfg.images):
        image_id = Path(path).stem
        try:
            clean = read_image(path)
        except (OSError, ValueError) as exc:
            log.warning("skipping %s: %s", path, exc)
            errors.append((path, str(exc)))
            continue
        processed += 1
        for model in cfg.models:
            for level in cfg.levels:
                seed = derive_seed(cfg.seed, image_id, model, level)
                noisy = corrupt(clean, NoiseConfig(
                    model=model, phi=level, phi1=cfg.phi1, phi2=cfg.phi2,
                    phi3=cfg.phi3, seed=seed))
                if progress is not None:
                    progress(f"{image_id} {model} {level:g}")
                if cfg.jobs > 1:
                    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                        results = list(pool.map(
                            lambda name: _measure(clean, noisy, name, cfg),
                            cfg.filters))
                else:
                    results = [_measure(clean, noisy, name, cfg)
                               for name in cfg.filters]
                for name, (m1, m2, m3, ms) in zip(cfg.filters, results):
                    rows.append(BenchRow(image_id, name, model, level, seed,
                                         m1, m2, m3, ms))
    if processed == 0:
        raise BenchError(f"no readable images among {len(cfg.images)} inputs")
    return rows, errors


def _average_ranks(values):
    """0-based ranks of the values, ascending, ties averaged."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2.0
        for t in range(i, j + 1):
            ranks[order[t]] = r
        i = j + 1
    return ranks


def aggregate_rankings(rows):
    """Average 0-based rankings per (model, level, criterion).

    For every image, filters are ranked ascending on each criterion (lower
    is better, timing included), ties receiving the average of their tied
    positions; ranks are then averaged over the images.  Images missing
    part of the group's filter set are excluded from that group.
    Returns {(model, level, criterion): [(filter, avg_rank), ...]} sorted
    ascending by average rank.
    """
    groups = {}
    for row in rows:
        groups.setdefault((row.model, row.level), {}).setdefault(
            row.image, {})[row.filter] = row

    table = {}
    for (model, level), images in sorted(groups.items()):
        full_set = set()
        for fdict in images.values():
            full_set |= set(fdict)
        filters = sorted(full_set)
        usable = {}
        for image, fdict in images.items():
            if set(fdict) == full_set:
                usable[image] = fdict
            else:
                log.warning("excluding %s from (%s, %g): filters missing: %s",
                            image, model, level,
                            sorted(full_set - set(fdict)))
        if not usable:
            continue
        for criterion in CRITERIA:
            attr = "time_ms" if criterion == "time" else criterion
            sums = {name: 0.0 for name in filters}
            for image in sorted(usable):
                fdict = usable[image]
                values = [getattr(fdict[name], attr) for name in filters]
                for name, rank in zip(filters, _average_ranks(values)):
                    sums[name] += rank
            count = len(usable)
            ranking = sorted(((name, sums[name] / count) for name in filters),
                             key=lambda kv: (kv[1], kv[0]))
            table[(model, level, criterion)] = ranking
    return table


def write_results_csv(path, rows):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r.image, r.filter, r.model, f"{r.level:.6g}",
                             r.seed, repr(r.mae), repr(r.mse), repr(r.ncd),
                             f"{r.time_ms:.3f}"])


def read_results_csv(path):
    rows = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected results header in {path}: {header}")
        for rec in reader:
            rows.append(BenchRow(rec[0], rec[1], rec[2], float(rec[3]),
                                 int(rec[4]), float(rec[5]), float(rec[6]),
                                 float(rec[7]), float(rec[8])))
    return rows


def write_rank_csv(path, table):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(RANK_HEADER)
        for (model, level, criterion), ranking in sorted(table.items()):
            for name, avg in ranking:
                writer.writerow([model, f"{level:.6g}", criterion, name, repr(avg)])


def write_report_json(path, cfg, rows, errors):
    report = {
        "config": {**asdict(cfg), "images": list(cfg.images),
                   "filters": list(cfg.filters), "models": list(cfg.models),
                   "levels": list(cfg.levels)},
        "errors": [{"image": p, "error": e} for p, e in errors],
        "rows": [asdict(r) for r in rows],
    }
    with open(path, "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
