"""
Тесты серии замеров: схема зёрен, состав строк, воспроизводимость, прерывание.
"""

from pathlib import Path

import pandas as pd
import pytest

from graph_ascent.benchmark import (
    ExperimentConfig,
    HittingBenchmark,
    build_graph,
    derive_seed,
    function_seed,
    summarize,
    trial_seed,
)
from graph_ascent.components.exporter import RESULTS_COLUMNS, read_results_csv


def small_experiment(tmp_path, **overrides):
    params = dict(
        family="grid",
        graph_params={"rows": 8, "cols": 8},
        k_list=[2],
        gammas=[1.0],
        include_eps=True,
        trials=1,
        functions=1,
        step_cap=5000,
        master_seed=7,
        output_dir=str(tmp_path),
        workers=1,
        target_quantile=None,
        record_wall_time=False,
    )
    params.update(overrides)
    return ExperimentConfig(**params)


class TestSeeds:
    def test_deterministic(self):
        assert derive_seed(5, 1, 2, 3) == derive_seed(5, 1, 2, 3)

    def test_streams_distinct(self):
        seeds = {trial_seed(2018, k, f, t) for k in (5, 10) for f in range(3) for t in range(20)}
        assert len(seeds) == 2 * 3 * 20
        assert function_seed(2018, 5, 0) != trial_seed(2018, 5, 0, 0)

    def test_master_seed_matters(self):
        assert trial_seed(1, 5, 0, 0) != trial_seed(2, 5, 0, 0)


class TestExperimentConfig:
    def test_validation(self, tmp_path):
        with pytest.raises(ValueError):
            small_experiment(tmp_path, step_cap=0)
        with pytest.raises(ValueError):
            small_experiment(tmp_path, family="torus")
        with pytest.raises(ValueError):
            small_experiment(tmp_path, gammas=[-1.0])
        with pytest.raises(ValueError):
            small_experiment(tmp_path, target_quantile=1.5)

    def test_from_sources_precedence(self, tmp_path):
        params = tmp_path / "exp.yaml"
        params.write_text("trials: 3\nstep_cap: 200\nk_list: [4, 6]\n", encoding="utf-8")
        exp = ExperimentConfig.from_sources(str(params), {"trials": 9, "gammas": None})
        assert exp.trials == 9
        assert exp.step_cap == 200
        assert exp.k_list == [4, 6]

    def test_from_sources_unknown_key(self, tmp_path):
        params = tmp_path / "exp.yaml"
        params.write_text("trails: 3\n", encoding="utf-8")
        with pytest.raises(ValueError, match="trails"):
            ExperimentConfig.from_sources(str(params))


def test_build_graph_families(tmp_path):
    assert build_graph("grid", {"rows": 3, "cols": 5}, 0).n == 15
    er = build_graph("er", {"n": 40, "p": "auto"}, 3)
    assert er.n == 40 and er.is_connected()
    assert build_graph("ba", {"n": 30, "m": 2}, 1).edge_count == 1 + 2 * 28
    with pytest.raises(ValueError):
        build_graph("torus", {}, 0)


class TestHittingBenchmark:
    def test_row_per_walker(self, tmp_path):
        result = HittingBenchmark(small_experiment(tmp_path)).run_and_save(show_progress=False)
        assert [r.algorithm for r in result.rows] == ["vanilla", "exponential", "laplacian", "laplacian_eps"]
        assert len({r.seed for r in result.rows}) == 1
        assert result.rows[1].param == "gamma=1"
        assert result.rows[2].param == "k=2"
        for name in ("results", "summary", "graph"):
            assert result.paths[name].exists()
        df = read_results_csv(result.paths["results"])
        assert list(df.columns) == RESULTS_COLUMNS
        assert (df["wall_ns"] == 0).all()

    def test_bytes_independent_of_workers(self, tmp_path):
        outputs = []
        for workers in (1, 4):
            exp = small_experiment(tmp_path / f"w{workers}", k_list=[1, 3], trials=3, functions=2,
                                   workers=workers, include_eps=False)
            result = HittingBenchmark(exp).run_and_save(show_progress=False)
            outputs.append(result.paths["results"].read_bytes())
        assert outputs[0] == outputs[1]

    def test_constant_functions_hit_at_start(self, tmp_path):
        exp = small_experiment(tmp_path, k_list=[1], trials=5, functions=2)
        rows = HittingBenchmark(exp).run(show_progress=False)
        assert rows and all(r.t_hit == 0 and not r.capped for r in rows)

    def test_capped_rows(self, tmp_path):
        exp = small_experiment(tmp_path, k_list=[10], step_cap=1, trials=4, include_eps=False)
        rows = HittingBenchmark(exp).run(show_progress=False)
        for row in rows:
            if row.capped:
                assert row.t_hit == 1
            else:
                assert row.t_hit in (0, 1)

    def test_sort_order(self, tmp_path):
        exp = small_experiment(tmp_path, k_list=[3, 2], trials=2, functions=2, workers=3)
        rows = HittingBenchmark(exp).run(show_progress=False)
        walkers = ["vanilla", "exponential", "laplacian", "laplacian_eps"]
        expected = [(k, w, f, t) for k in (3, 2) for w in walkers for f in range(2) for t in range(2)]
        expected.sort(key=lambda key: (key[0], walkers.index(key[1]), key[2], key[3]))
        assert [(r.k, r.algorithm, r.func_idx, r.trial_idx) for r in rows] == expected

    def test_summary_recomputes_from_results(self, tmp_path):
        exp = small_experiment(tmp_path, k_list=[2, 4], trials=4, functions=2, include_eps=False)
        result = HittingBenchmark(exp).run_and_save(show_progress=False)
        recomputed = summarize(read_results_csv(result.paths["results"]))
        stored = pd.read_csv(result.paths["summary"], dtype={"param": str}, keep_default_na=False)
        assert len(recomputed) == len(stored) == 2 * 3
        for col in ("runs", "mean_t_hit", "median_t_hit", "std_t_hit", "cap_rate"):
            assert stored[col].tolist() == pytest.approx(recomputed[col].tolist(), abs=1e-6)

    def test_excel_export(self, tmp_path):
        result = HittingBenchmark(small_experiment(tmp_path)).run_and_save(export_excel=True, show_progress=False)
        assert result.paths["excel"].suffix == ".xlsx"

    def test_excel_export_relative_output_dir(self, tmp_path, monkeypatch):
        """Относительная папка результатов: summary.xlsx лежит рядом с results.csv."""
        monkeypatch.chdir(tmp_path)
        exp = small_experiment(tmp_path, output_dir="rel/out", include_eps=False)
        result = HittingBenchmark(exp).run_and_save(export_excel=True, show_progress=False)
        assert (tmp_path / "rel" / "out" / "results.csv").exists()
        assert (tmp_path / "rel" / "out" / "summary.xlsx").exists()
        assert result.paths["excel"] == Path("rel/out/summary.xlsx")
        assert not (tmp_path / "rel" / "out" / "rel").exists()

    def test_k_larger_than_graph(self, tmp_path):
        exp = small_experiment(tmp_path, graph_params={"rows": 3, "cols": 3}, k_list=[10])
        with pytest.raises(ValueError, match="k=10"):
            HittingBenchmark(exp).run(show_progress=False)

    def test_interrupt_writes_partial(self, tmp_path, monkeypatch):
        exp = small_experiment(tmp_path, k_list=[2], trials=5, include_eps=False)
        original = HittingBenchmark._run_one
        calls = {"n": 0}

        def flaky(self, key, kernel, k, seed):
            calls["n"] += 1
            if calls["n"] == 6:
                raise KeyboardInterrupt
            return original(self, key, kernel, k, seed)

        monkeypatch.setattr(HittingBenchmark, "_run_one", flaky)
        with pytest.raises(KeyboardInterrupt):
            HittingBenchmark(exp).run_and_save(show_progress=False)
        partial = pd.read_csv(tmp_path / "results_partial.csv")
        assert list(partial.columns) == RESULTS_COLUMNS
        assert len(partial) <= 5
        assert not (tmp_path / "results.csv").exists()
