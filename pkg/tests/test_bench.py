import csv

import numpy as np
import pytest

import vfkit
from vfkit import bench
from vfkit.ppm import write_ppm

from conftest import random_image


@pytest.fixture
def image_dir(tmp_path, rng):
    d = tmp_path / "imgs"
    d.mkdir()
    for name in ("alpha", "beta"):
        write_ppm(d / f"{name}.ppm", random_image(rng, 12, 12))
    return d


def small_config(image_dir, **kw):
    defaults = dict(
        images=tuple(sorted(str(p) for p in image_dir.iterdir())),
        filters=("none", "vmf"),
        models=("correlated",),
        levels=(0.10,),
        seed=3,
    )
    defaults.update(kw)
    return bench.BenchConfig(**defaults)


def drop_time_column(path):
    with open(path, newline="") as f:
        return ["\t".join(rec[:-1]) for rec in csv.reader(f)]


class TestDeriveSeed:
    def test_stable_and_distinct(self):
        s1 = bench.derive_seed(0, "lena", "correlated", 0.05)
        assert s1 == bench.derive_seed(0, "lena", "correlated", 0.05)
        assert s1 != bench.derive_seed(0, "lena", "correlated", 0.10)
        assert s1 != bench.derive_seed(0, "lena", "uncorrelated", 0.05)
        assert s1 != bench.derive_seed(1, "lena", "correlated", 0.05)
        assert s1 != bench.derive_seed(0, "peppers", "correlated", 0.05)


class TestRunBenchmark:
    def test_row_count_and_order(self, image_dir):
        rows, errors = bench.run_benchmark(small_config(image_dir))
        assert not errors
        assert len(rows) == 2 * 2  # 2 images x 1 model x 1 level x 2 filters
        assert [r.image for r in rows] == ["alpha", "alpha", "beta", "beta"]
        assert [r.filter for r in rows] == ["none", "vmf"] * 2

    def test_metrics_against_clean_original(self, image_dir, rng):
        cfg = small_config(image_dir)
        rows, _ = bench.run_benchmark(cfg)
        # the identity row reproduces the raw noisy-image error, which is
        # strictly positive at a 10% level
        none_rows = [r for r in rows if r.filter == "none"]
        assert all(r.mae > 0 for r in none_rows)

    def test_determinism_modulo_timing(self, image_dir, tmp_path):
        cfg = small_config(image_dir)
        rows1, _ = bench.run_benchmark(cfg)
        rows2, _ = bench.run_benchmark(cfg)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        bench.write_results_csv(p1, rows1)
        bench.write_results_csv(p2, rows2)
        assert drop_time_column(p1) == drop_time_column(p2)

    def test_unreadable_image_skipped(self, image_dir):
        bad = image_dir / "broken.ppm"
        bad.write_bytes(b"P6\n4 4\n255\n\x00")
        cfg = small_config(image_dir, images=tuple(
            sorted(str(p) for p in image_dir.iterdir())))
        rows, errors = bench.run_benchmark(cfg)
        assert len(errors) == 1 and "broken" in errors[0][0]
        assert {r.image for r in rows} == {"alpha", "beta"}

    def test_all_unreadable_is_fatal(self, tmp_path):
        bad = tmp_path / "bad.ppm"
        bad.write_bytes(b"nope")
        with pytest.raises(bench.BenchError):
            bench.run_benchmark(bench.BenchConfig(images=(str(bad),)))

    def test_level_bounds_validated(self, image_dir):
        with pytest.raises(ValueError):
            small_config(image_dir, levels=(0.0,))

    def test_unknown_filter_rejected_early(self, image_dir):
        with pytest.raises(Exception):
            small_config(image_dir, filters=("vmf", "nope"))

    def test_jobs_match_serial(self, image_dir):
        serial, _ = bench.run_benchmark(small_config(image_dir))
        parallel, _ = bench.run_benchmark(small_config(image_dir, jobs=4))
        for a, b in zip(serial, parallel):
            assert (a.image, a.filter, a.mae, a.mse, a.ncd) == (
                b.image, b.filter, b.mae, b.mse, b.ncd)

    def test_timed_with_jobs_rejected(self, image_dir):
        with pytest.raises(ValueError):
            small_config(image_dir, timed=True, jobs=2)


class TestAggregateRankings:
    def mk_row(self, image, filt, value, model="m", level=0.1):
        return bench.BenchRow(image, filt, model, level, 0,
                              value, value, value, value)

    def test_strict_dominance(self):
        rows = [self.mk_row("i1", "a", 1.0), self.mk_row("i1", "b", 2.0),
                self.mk_row("i2", "a", 1.0), self.mk_row("i2", "b", 2.0)]
        table = bench.aggregate_rankings(rows)
        ranking = table[("m", 0.1, "mae")]
        assert ranking == [("a", 0.0), ("b", 1.0)]

    def test_tie_convention(self):
        rows = [self.mk_row("i1", "a", 5.0), self.mk_row("i1", "b", 5.0)]
        table = bench.aggregate_rankings(rows)
        assert table[("m", 0.1, "mse")] == [("a", 0.5), ("b", 0.5)]

    def test_rank_range(self):
        rows = []
        for img in ("i1", "i2", "i3"):
            for k, f in enumerate("abcd"):
                rows.append(self.mk_row(img, f, float(k)))
        table = bench.aggregate_rankings(rows)
        for _, ranking in table.items():
            for _, ar in ranking:
                assert 0.0 <= ar <= 3.0

    def test_row_order_invariance(self, image_dir):
        rows, _ = bench.run_benchmark(small_config(image_dir))
        t1 = bench.aggregate_rankings(rows)
        t2 = bench.aggregate_rankings(list(reversed(rows)))
        assert t1 == t2

    def test_incomplete_image_excluded(self):
        rows = [self.mk_row("i1", "a", 1.0), self.mk_row("i1", "b", 2.0),
                self.mk_row("i2", "a", 9.0)]  # i2 lacks filter b
        table = bench.aggregate_rankings(rows)
        assert table[("m", 0.1, "mae")] == [("a", 0.0), ("b", 1.0)]


class TestCsvRoundtrip:
    def test_results_roundtrip(self, image_dir, tmp_path):
        rows, _ = bench.run_benchmark(small_config(image_dir))
        path = tmp_path / "r.csv"
        bench.write_results_csv(path, rows)
        back = bench.read_results_csv(path)
        for a, b in zip(rows, back):
            assert a.image == b.image and a.filter == b.filter
            assert a.mae == b.mae and a.mse == b.mse and a.ncd == b.ncd

    def test_header_enforced(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("foo,bar\n1,2\n")
        with pytest.raises(ValueError):
            bench.read_results_csv(path)

    def test_rank_csv_shape(self, image_dir, tmp_path):
        rows, _ = bench.run_benchmark(small_config(image_dir))
        table = bench.aggregate_rankings(rows)
        path = tmp_path / "ranks.csv"
        bench.write_rank_csv(path, table)
        with open(path, newline="") as f:
            recs = list(csv.reader(f))
        assert recs[0] == bench.RANK_HEADER
        # 1 model x 1 level x 4 criteria x 2 filters
        assert len(recs) == 1 + 4 * 2

    def test_report_json(self, image_dir, tmp_path):
        import json
        cfg = small_config(image_dir)
        rows, errors = bench.run_benchmark(cfg)
        path = tmp_path / "report.json"
        bench.write_report_json(path, cfg, rows, errors)
        data = json.loads(path.read_text())
        assert data["config"]["seed"] == 3
        assert len(data["rows"]) == len(rows)


class TestUnfilteredRowExpectation:
    def test_none_row_matches_analytic_noise_mae(self, tmp_path):
        # constant-128 image under uncorrelated noise: each corrupted channel
        # moves by E|impulse - 128| = (123 + 122) / 2 = 122.5 on average,
        # so the identity-filter row's MAE is about phi * 122.5
        d = tmp_path / "imgs"
        d.mkdir()
        write_ppm(d / "flat.ppm", np.full((128, 128, 3), 128, dtype=np.uint8))
        cfg = bench.BenchConfig(images=(str(d / "flat.ppm"),),
                                filters=("none",), models=("uncorrelated",),
                                levels=(0.10,), seed=5)
        rows, _ = bench.run_benchmark(cfg)
        assert rows[0].mae == pytest.approx(0.10 * 122.5, rel=0.05)


class TestConstantImageSanity:
    def test_all_filters_zero_error_without_noise(self):
        img = np.full((24, 24, 3), 77, dtype=np.uint8)
        for name in vfkit.BENCH_FILTERS:
            out = vfkit.apply_filter(img, name)
            assert vfkit.mae(img, out) == 0.0
            assert vfkit.mse(img, out) == 0.0
            assert vfkit.ncd(img, out) == 0.0
