"""Monte Carlo engine: determinism, worker invariance, tables, KS."""

import json

import numpy as np
import pytest

import blocknorm.mc as mc
from blocknorm.blocks import Batch, BigSmall, Interlace
from blocknorm.dist import NORMAL, ref_quantile, student_t
from blocknorm.errors import ConfigurationError, DataError, DegenerateRateError
from blocknorm.mc import (
    DEFAULT_X_GRID,
    SimConfig,
    estimate_tail,
    ks_distance,
    ratio_grid,
    ratio_grid_csv,
    simulate_stats,
    table1,
    table1_csv,
    tail_table_csv,
    tail_table_payload,
)
from blocknorm.procgen import AR1, ARCH1, IIDNormal


def _config(**overrides):
    base = dict(
        process=IIDNormal(),
        n=200,
        scheme=Interlace(10),
        stat_kind="InStar",
        reps=2000,
        master_seed=31,
        x_grid=(1.0, 1.5, 2.0, 2.5),
    )
    base.update(overrides)
    return SimConfig(**base)


class TestConfigValidation:
    def test_x_grid_must_increase(self):
        with pytest.raises(ConfigurationError):
            _config(x_grid=(2.0, 1.0))

    def test_reps_positive(self):
        with pytest.raises(ConfigurationError):
            _config(reps=0)

    def test_stat_scheme_mismatch(self):
        with pytest.raises(ConfigurationError):
            _config(scheme=BigSmall(5, 2))

    def test_workers_positive(self):
        with pytest.raises(ConfigurationError):
            estimate_tail(_config(reps=10), workers=0)


class TestDeterminismAndWorkers:
    def test_single_rep_reproducible(self):
        cfg = _config(reps=1)
        t1, t2 = estimate_tail(cfg), estimate_tail(cfg)
        assert np.array_equal(t1.mc_tail, t2.mc_tail)
        assert set(np.unique(t1.mc_tail)) <= {0.0, 1.0}

    def test_same_config_same_table(self):
        cfg = _config()
        t1, t2 = estimate_tail(cfg), estimate_tail(cfg)
        for field in ("mc_tail", "ref_tail", "ratio", "mc_se"):
            assert np.array_equal(getattr(t1, field), getattr(t2, field))

    def test_worker_count_never_changes_results(self):
        # reps > chunk size so several chunks are in flight
        cfg = _config(reps=9000, process=AR1(0.4))
        t1 = estimate_tail(cfg, workers=1)
        t8 = estimate_tail(cfg, workers=8)
        assert np.array_equal(t1.mc_tail, t8.mc_tail)
        assert np.array_equal(t1.ratio, t8.ratio)
        assert t1.degenerate_count == t8.degenerate_count
        v1 = simulate_stats(cfg, workers=1)
        v8 = simulate_stats(cfg, workers=8)
        assert np.array_equal(v1, v8)

    def test_monotone_tail(self):
        table = estimate_tail(_config(reps=5000, x_grid=tuple(np.linspace(0, 3, 13))))
        assert np.all(np.diff(table.mc_tail) <= 0.0)

    def test_values_count(self):
        cfg = _config(reps=4321)
        assert simulate_stats(cfg).size == 4321


class TestAgainstExactNull:
    def test_iid_interlace_ratio_near_one(self):
        # under iid data the interlaced studentized statistic is exactly t(k-1)
        cfg = _config(n=1000, scheme=Interlace(50), reps=20_000, x_grid=(2.0,), master_seed=3)
        table = estimate_tail(cfg)
        se_rel = 4.0 * table.mc_se[0] / table.ref_tail[0]
        assert table.ratio[0] == pytest.approx(1.0, abs=max(se_rel, 0.06))
        assert table.ref.label() == "t9"

    def test_ref_override(self):
        cfg = _config(reps=100, ref=NORMAL)
        assert estimate_tail(cfg).ref.is_normal

    def test_statistic_values_match_scalar_api(self):
        from blocknorm.procgen import derive_rep_seed, gen_iid_normal
        from blocknorm.stats import i_n_star

        cfg = _config(reps=64)
        values = simulate_stats(cfg)
        for r in (0, 13, 63):
            path = gen_iid_normal(cfg.n, derive_rep_seed(cfg.master_seed, r))
            assert values[r] == i_n_star(path, 10).value


class TestDegenerateHandling:
    def test_all_degenerate_aborts(self, monkeypatch):
        monkeypatch.setattr(mc, "generate_paths", lambda process, n, seeds: np.ones((len(seeds), n)))
        with pytest.raises(DegenerateRateError):
            estimate_tail(_config(reps=100))

    def test_rare_degenerates_excluded_from_both_sides(self, monkeypatch):
        real_kernel = mc.make_kernel

        class _Kernel:
            def __init__(self, inner):
                self.inner = inner
                self.ref = inner.ref

            def values(self, paths, mu0):
                values, degenerate = self.inner.values(paths, mu0)
                degenerate = degenerate.copy()
                degenerate[:1] = True  # first replication of each chunk
                return values, degenerate

        monkeypatch.setattr(mc, "make_kernel", lambda *a: _Kernel(real_kernel(*a)))
        cfg = _config(reps=2000, x_grid=(-1e9,))
        table = estimate_tail(cfg)
        assert table.degenerate_count == 1
        # every retained draw exceeds -1e9, so exclusion from both sides gives exactly 1
        assert table.mc_tail[0] == 1.0


class TestKSDistance:
    def test_single_point_against_normal(self):
        assert ks_distance([0.0], NORMAL) == pytest.approx(0.5, abs=1e-12)

    def test_quantile_construction(self):
        n = 200
        dist = student_t(9)
        sample = [ref_quantile(dist, (i - 0.5) / n) for i in range(1, n + 1)]
        assert ks_distance(sample, dist) <= 0.5 / n + 1e-9

    def test_sample_from_reference(self):
        from blocknorm.procgen import generator

        sample = generator(99).standard_normal(100_000)
        assert ks_distance(sample, NORMAL) < 0.006

    def test_empty_sample_rejected(self):
        with pytest.raises(DataError):
            ks_distance([], NORMAL)


class TestTable1:
    def test_shape_and_spot_rows(self):
        t = table1()
        assert t.shape == (25, 5)
        by_x = {round(row[0], 1): row for row in t}
        np.testing.assert_allclose(
            np.round(by_x[3.0][1:], 5), (0.00135, 0.00368, 0.00748, 5.53981), atol=1.1e-5
        )
        np.testing.assert_allclose(
            by_x[1.6][1:3], (0.05480, 0.06305), atol=5.1e-6
        )

    def test_csv_rounding(self):
        lines = table1_csv().strip().splitlines()
        assert lines[0].startswith("x,")
        assert len(lines) == 26
        row = dict(zip(lines[0].split(","), lines[11].split(",")))
        assert row["x"] == "2.6"
        assert (row["normal_upper"], row["t19_upper"], row["t9_upper"], row["t9_over_normal"]) == (
            "0.00466", "0.00879", "0.01437", "3.08271",
        )


class TestGridsAndSerialization:
    def test_single_point_grid(self):
        grid = ratio_grid(_config(process=AR1(0.0), reps=500), [0.3])
        assert grid.param_name == "rho"
        assert grid.param_values == (0.3,)
        assert grid.ratios.shape == (4, 1)

    def test_grid_layout_and_csv(self):
        cfg = _config(process=ARCH1(b=0.0), reps=300, x_grid=(1.6, 2.0))
        grid = ratio_grid(cfg, [0.0, 0.5])
        assert grid.param_name == "b"
        assert grid.ratios.shape == (2, 2)
        lines = ratio_grid_csv(grid).strip().splitlines()
        assert lines[0] == "x,b=0,b=0.5,full:b=0,full:b=0.5"
        assert len(lines) == 3

    def test_grid_requires_parametric_process(self):
        with pytest.raises(ConfigurationError):
            ratio_grid(_config(), [0.1])

    def test_tail_table_csv_columns(self):
        table = estimate_tail(_config(reps=200))
        lines = tail_table_csv(table).strip().splitlines()
        assert lines[0] == "x,ratio,ratio_full,mc_tail,ref_tail,mc_se,degenerate_count"
        assert len(lines) == 5

    def test_payload_metadata(self):
        table = estimate_tail(_config(reps=100))
        payload = tail_table_payload(table)
        meta = payload["metadata"]
        assert meta["master_seed"] == 31
        assert "philox" in meta["rng_algorithm"]
        assert meta["reps"] == 100
        assert meta["config"]["stat"] == "i-star"
        assert json.dumps(payload)  # JSON-serializable
        assert len(payload["rows"]["x"]) == 4

    def test_default_grid_is_25_levels(self):
        assert len(DEFAULT_X_GRID) == 25
        assert DEFAULT_X_GRID[0] == 1.6
        assert DEFAULT_X_GRID[-1] == 4.0


class TestBatchSchemeEngine:
    def test_t_star_run(self):
        cfg = _config(scheme=Batch(10), stat_kind="TnStar", reps=3000, x_grid=(2.0,), master_seed=8)
        table = estimate_tail(cfg)
        assert table.ref.label() == "t19"  # 2k - 1 sums with k = 200 // 20
        assert 0.5 < table.ratio[0] < 1.6

    def test_w_star_run(self):
        cfg = _config(
            scheme=BigSmall(8, 2), stat_kind="WnStar", reps=3000, x_grid=(2.0,), master_seed=8
        )
        table = estimate_tail(cfg)
        assert table.ref.label() == "t19"
        assert 0.5 < table.ratio[0] < 1.6

    def test_mu0_passes_through_to_the_statistic(self):
        import dataclasses

        from blocknorm.procgen import derive_rep_seed, gen_iid_normal
        from blocknorm.stats import i_n_star

        cfg0 = _config(reps=50, x_grid=(0.0,))
        cfg1 = dataclasses.replace(cfg0, mu0=0.3)
        v0, v1 = simulate_stats(cfg0), simulate_stats(cfg1)
        path0 = gen_iid_normal(cfg0.n, derive_rep_seed(cfg0.master_seed, 0))
        assert v0[0] == i_n_star(path0, 10, 0.0).value
        assert v1[0] == i_n_star(path0, 10, 0.3).value
        assert v0[0] != v1[0]
