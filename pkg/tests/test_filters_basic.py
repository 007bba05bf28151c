import numpy as np
import pytest

from vfkit.filters import basic

import oracles as orc
from conftest import impulse_window, random_window


def window_member(win, v):
    return any((win[i] == v).all() for i in range(win.shape[0]))


class TestVmf:
    def test_constant_window(self):
        win = np.full((9, 3), 33.0)
        assert (basic.vmf(win) == 33.0).all()

    def test_impulse_rejected(self):
        assert (basic.vmf(impulse_window()) == 10.0).all()

    def test_oracle_agreement(self, rng):
        for _ in range(300):
            win = random_window(rng)
            rows = orc.to_rows(win)
            assert tuple(basic.vmf(win)) == rows[orc.o_vmf_index(rows)]

    def test_minimization_property(self, rng):
        for _ in range(100):
            win = random_window(rng)
            out = basic.vmf(win)
            best = sum(orc.o_lp(tuple(out), r, 2.0) for r in orc.to_rows(win))
            for i in range(9):
                cand = orc.o_cum_lp(orc.to_rows(win), i, 2.0)
                assert best <= cand + 1e-9

    def test_p1_oracle_agreement(self, rng):
        for _ in range(100):
            win = random_window(rng)
            rows = orc.to_rows(win)
            want = rows[orc.o_argmin([orc.o_cum_lp(rows, i, 1.0) for i in range(9)])]
            assert tuple(basic.vmf(win, p=1.0)) == want


class TestAtvmf:
    def test_alpha_zero_equals_vmf(self, rng):
        for _ in range(100):
            win = random_window(rng)
            assert (basic.atvmf(win, alpha=0) == basic.vmf(win)).all()

    def test_constant_window(self):
        win = np.full((9, 3), 5.0)
        assert (basic.atvmf(win, alpha=4) == 5.0).all()

    def test_impulse_trimmed(self):
        assert (basic.atvmf(impulse_window(), alpha=4) == 10.0).all()

    def test_mean_of_lowest_ranked(self, rng):
        for _ in range(100):
            win = random_window(rng)
            rows = orc.to_rows(win)
            order = orc.o_rank(rows, lambda i: orc.o_cum_lp(rows, i, 2.0))
            m = np.mean([rows[i] for i in order[:5]], axis=0)
            assert basic.atvmf(win, alpha=4) == pytest.approx(m, abs=1e-9)

    def test_alpha_bounds(self, rng):
        with pytest.raises(ValueError):
            basic.atvmf(random_window(rng), alpha=9)


class TestBvdf:
    def test_constant_window_tie(self):
        win = np.full((9, 3), 12.0)
        assert (basic.bvdf(win) == 12.0).all()

    def test_chromatic_outlier_rejected(self):
        win = np.full((9, 3), 0.0)
        win[:, 0] = 200.0           # eight red vectors
        win[4] = (0.0, 200.0, 0.0)  # green center
        assert (basic.bvdf(win) == (200.0, 0.0, 0.0)).all()

    def test_scale_invariant_selection(self, rng):
        for _ in range(100):
            win = random_window(rng, low=1)
            base = basic.bvdf(win)
            for s in (0.5, 2.0):
                assert basic.bvdf(win * s) == pytest.approx(base * s, rel=1e-12)

    def test_oracle_agreement_both_modes(self, rng):
        for _ in range(300):
            win = random_window(rng)
            rows = orc.to_rows(win)
            assert tuple(basic.bvdf(win)) == rows[orc.o_bvdf_index(rows, orc.MODE_FAST)]
            assert tuple(basic.bvdf(win, "reference")) == rows[orc.o_bvdf_index(rows, orc.MODE_REF)]


class TestGvdf:
    def test_k1_equals_bvdf(self, rng):
        for _ in range(100):
            win = random_window(rng)
            assert (basic.gvdf(win, k=1) == basic.bvdf(win)).all()

    def test_constant_window(self):
        win = np.full((9, 3), 77.0)
        assert (basic.gvdf(win) == 77.0).all()

    def test_chromatic_outlier_mean(self):
        win = np.full((9, 3), 0.0)
        win[:, 0] = 200.0
        win[4] = (0.0, 200.0, 0.0)
        assert (basic.gvdf(win, k=5) == (200.0, 0.0, 0.0)).all()

    def test_mean_of_angular_lowest(self, rng):
        for _ in range(100):
            win = random_window(rng)
            rows = orc.to_rows(win)
            order = orc.o_rank(rows, lambda i: orc.o_cum_ang(rows, i))
            m = np.mean([rows[i] for i in order[:5]], axis=0)
            assert basic.gvdf(win, k=5) == pytest.approx(m, abs=1e-9)


class TestDdf:
    def test_gamma_zero_matches_vmf(self, rng):
        for _ in range(200):
            win = random_window(rng)
            assert (basic.ddf(win, gamma=0.0) == basic.vmf(win)).all()

    def test_gamma_one_matches_bvdf(self, rng):
        for _ in range(200):
            win = random_window(rng)
            assert (basic.ddf(win, gamma=1.0) == basic.bvdf(win)).all()

    def test_oracle_agreement(self, rng):
        for _ in range(300):
            win = random_window(rng)
            rows = orc.to_rows(win)
            assert tuple(basic.ddf(win, gamma=0.5)) == rows[orc.o_ddf_index(rows)]

    def test_gamma_validation(self, rng):
        with pytest.raises(ValueError):
            basic.ddf(random_window(rng), gamma=1.2)


class TestCbrf:
    def test_constant_window(self):
        win = np.full((9, 3), 1.0)
        assert (basic.cbrf(win) == 1.0).all()

    def test_impulse_rejected(self):
        assert (basic.cbrf(impulse_window()) == 10.0).all()

    def test_oracle_agreement(self, rng):
        for _ in range(300):
            win = random_window(rng)
            rows = orc.to_rows(win)
            assert tuple(basic.cbrf(win)) == rows[orc.o_cbrf_index(rows)]


class TestSelectionProperty:
    def test_selectors_return_window_members(self, rng):
        for _ in range(100):
            win = random_window(rng)
            for out in (basic.vmf(win), basic.bvdf(win),
                        basic.ddf(win), basic.cbrf(win)):
                assert window_member(win, out)

    def test_value_invariant_under_permutation(self, rng):
        # permuting a window without ties leaves selector outputs unchanged
        for _ in range(50):
            win = random_window(rng)
            rows = orc.to_rows(win)
            keys = [orc.o_cum_lp(rows, i, 2.0) for i in range(9)]
            if len(set(keys)) < 9:
                continue
            perm = rng.permutation(9)
            assert (basic.vmf(win[perm]) == basic.vmf(win)).all()
