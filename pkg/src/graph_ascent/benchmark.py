"""
Серия замеров времени попадания в максимум.

Для каждого k синтезируются случайные k-гладкие функции, и все выбранные
блуждания запускаются trials раз на каждой функции до первого попадания
или до предела шагов. Зёрна всех прогонов заранее выводятся из главного
зерна, результаты сортируются перед записью, поэтому порядок выполнения
потоков не влияет на итоговые файлы.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
import pandas as pd
import yaml
import logging

from .config import config
from .components.exporter import (
    SummaryExporter,
    load_graph_file,
    results_frame,
    save_graph_file,
    write_results_csv,
    write_summary_csv,
)
from .components.graph_core import Graph, barabasi_albert, er_default_p, erdos_renyi, grid_graph
from .components.kernel_factory import KernelFactory, default_walker_set
from .components.spectral import SpectralBasis, GraphFunction, decompose, spectral_basis, synth_smooth
from .components.walkers import BaseKernel, run_walk

try:
    from tqdm import tqdm
except ImportError:  # pragma: no cover
    tqdm = None

logger = logging.getLogger(__name__)

GRAPH_FAMILIES = ("grid", "er", "ba", "file")

# Домены счётчиков в схеме зёрен
_FUNCTION_STREAM = 0
_TRIAL_STREAM = 1


def derive_seed(master_seed: int, *counters: int) -> int:
    """Зерно потока из главного зерна и счётчиков (SeedSequence.spawn_key)."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(c) for c in counters))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def function_seed(master_seed: int, k: int, func_idx: int) -> int:
    return derive_seed(master_seed, _FUNCTION_STREAM, k, func_idx)


def trial_seed(master_seed: int, k: int, func_idx: int, trial_idx: int) -> int:
    return derive_seed(master_seed, _TRIAL_STREAM, k, func_idx, trial_idx)


def build_graph(family: str, params: Mapping[str, Any], seed: int) -> Graph:
    """
    Граф по описанию семейства.

    grid: rows, cols; er: n, p (None или "auto" → 1.1·ln n / n); ba: n, m; file: path.
    """
    family = family.lower()
    if family == "grid":
        return grid_graph(int(params["rows"]), int(params["cols"]))
    if family == "er":
        n = int(params["n"])
        p = params.get("p")
        if p is None or p == "auto":
            p = er_default_p(n, config.get_er_p_factor())
        return erdos_renyi(n, float(p), seed, max_attempts=config.get_er_max_attempts())
    if family == "ba":
        return barabasi_albert(int(params["n"]), int(params.get("m") or config.get_ba_m()), seed)
    if family == "file":
        return load_graph_file(params["path"], family=str(params.get("label", "custom")))
    raise ValueError(f"Неизвестное семейство графов '{family}'; известные: {', '.join(GRAPH_FAMILIES)}")


@dataclass
class ExperimentConfig:
    """Параметры серии замеров.

    Attributes:
        family / graph_params / graph_seed: Описание графа
        k_list: Порядки гладкости
        gammas: γ экспоненциальных блужданий
        include_eps: Добавить ε-вариант лапласова блуждания
        eps: ε для него (None → ε_min из разложения функции)
        walkers: Явный список блужданий в краткой записи ("vanilla", "exp:1", ...)
        trials: Прогонов на функцию
        functions: Функций на каждое k
        step_cap: Предел шагов
        master_seed: Главное зерно
        output_dir: Папка результатов
        workers: Потоков пула
        target_quantile: Попадание в верхнюю долю вершин вместо максимума
        record_wall_time: Записывать время прогона (нарушает побайтовую воспроизводимость)
    """
    family: str = "grid"
    graph_params: Dict[str, Any] = field(default_factory=lambda: {"rows": 32, "cols": 32})
    graph_seed: int = 0
    k_list: List[int] = field(default_factory=lambda: list(config.get_k_list()))
    gammas: List[float] = field(default_factory=lambda: list(config.get_gammas()))
    include_eps: bool = False
    eps: Optional[float] = None
    walkers: Optional[List[str]] = None
    trials: int = field(default_factory=config.get_trials)
    functions: int = field(default_factory=config.get_functions_per_k)
    step_cap: int = field(default_factory=config.get_step_cap)
    master_seed: int = field(default_factory=config.get_master_seed)
    output_dir: str = field(default_factory=config.get_results_folder)
    workers: int = field(default_factory=config.get_bench_workers)
    target_quantile: Optional[float] = field(default_factory=config.get_target_quantile)
    record_wall_time: bool = field(default_factory=config.is_wall_time_recorded)

    def __post_init__(self):
        if self.family not in GRAPH_FAMILIES:
            raise ValueError(f"Неизвестное семейство графов '{self.family}'")
        if self.step_cap < 1:
            raise ValueError(f"Предел шагов должен быть ≥ 1, получено {self.step_cap}")
        if self.trials < 1 or self.functions < 1:
            raise ValueError(f"trials и functions должны быть ≥ 1, получено {self.trials}, {self.functions}")
        if not self.k_list or any(int(k) < 1 for k in self.k_list):
            raise ValueError(f"Некорректный список k: {self.k_list}")
        if any(float(g) < 0 for g in self.gammas):
            raise ValueError(f"γ должны быть ≥ 0: {self.gammas}")
        if self.eps is not None and self.eps < 0:
            raise ValueError(f"ε должно быть ≥ 0, получено {self.eps}")
        if self.target_quantile is not None and not 0.0 < self.target_quantile <= 1.0:
            raise ValueError(f"Доля вершин должна лежать в (0, 1], получено {self.target_quantile}")
        if self.workers < 1:
            raise ValueError(f"Число потоков должно быть ≥ 1, получено {self.workers}")
        self.k_list = [int(k) for k in self.k_list]
        self.gammas = [float(g) for g in self.gammas]

    @classmethod
    def from_sources(cls, params_file: Optional[str] = None,
                     overrides: Optional[Mapping[str, Any]] = None) -> "ExperimentConfig":
        """
        Собирает конфигурацию: флаги > файл эксперимента (YAML) > config.yaml > значения по умолчанию.

        Raises:
            ValueError: неизвестные ключи в файле эксперимента
        """
        known = {f.name for f in fields(cls)}
        merged: Dict[str, Any] = {}
        if params_file:
            with open(params_file, "r", encoding="utf-8") as fh:
                loaded = yaml.safe_load(fh) or {}
            if not isinstance(loaded, dict):
                raise ValueError(f"Файл эксперимента {params_file} должен содержать словарь")
            unknown = sorted(set(loaded) - known)
            if unknown:
                raise ValueError(f"Неизвестные параметры в {params_file}: {', '.join(unknown)}")
            merged.update(loaded)
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key not in known:
                raise ValueError(f"Неизвестный параметр эксперимента '{key}'")
            merged[key] = value
        return cls(**merged)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ResultRow:
    """Одна строка результатов: один прогон одного блуждания."""
    family: str
    n: int
    k: int
    algorithm: str
    param: str
    func_idx: int
    trial_idx: int
    seed: int
    t_hit: int          # T_hit; для упёршихся прогонов равен пределу шагов
    capped: bool
    wall_ns: int = 0


@dataclass
class BenchmarkResult:
    rows: List[ResultRow]
    summary: pd.DataFrame
    graph: Graph
    paths: Dict[str, Path] = field(default_factory=dict)


def summarize(rows_or_frame: Any) -> pd.DataFrame:
    """
    Сводка по (семейство, n, k, алгоритм, параметр): число прогонов, среднее,
    медиана, стандартное отклонение T_hit и доля упёршихся в предел.
    Упёршиеся прогоны входят в среднее со значением предела.
    """
    df = rows_or_frame if isinstance(rows_or_frame, pd.DataFrame) else results_frame(rows_or_frame)
    if df.empty:
        return pd.DataFrame(columns=["family", "n", "k", "algorithm", "param", "runs", "mean_t_hit",
                                     "median_t_hit", "std_t_hit", "cap_rate"])
    grouped = df.groupby(["family", "n", "k", "algorithm", "param"], sort=True)
    summary = grouped.agg(
        runs=("t_hit", "size"),
        mean_t_hit=("t_hit", "mean"),
        median_t_hit=("t_hit", "median"),
        std_t_hit=("t_hit", "std"),
        cap_rate=("capped", "mean"),
    ).reset_index()
    summary["std_t_hit"] = summary["std_t_hit"].fillna(0.0)
    return summary


class HittingBenchmark:
    """Серия замеров T_hit для набора блужданий на одном графе."""

    def __init__(self, experiment: ExperimentConfig, graph: Optional[Graph] = None):
        self.experiment = experiment
        self.graph = graph
        self.basis: Optional[SpectralBasis] = None
        self._completed: List[Tuple[Tuple[int, int, int, int], ResultRow]] = []

    def _walker_configs(self) -> List[Dict[str, Any]]:
        exp = self.experiment
        if exp.walkers:
            return [KernelFactory.parse_spec(w) for w in exp.walkers]
        return default_walker_set(exp.gammas, include_eps=exp.include_eps)

    def _prepare_graph(self) -> Graph:
        if self.graph is None:
            exp = self.experiment
            self.graph = build_graph(exp.family, exp.graph_params, exp.graph_seed)
            logger.info(f"Граф {self.graph.family}: n={self.graph.n}, рёбер {self.graph.edge_count}")
        if self.basis is None:
            self.basis = spectral_basis(
                self.graph,
                orthonormality_tol=config.get_orthonormality_tol(),
                residual_tol=config.get_residual_tol(),
                sign_tol=config.get_sign_tol(),
            )
            logger.info(f"Собственный базис вычислен: n={self.graph.n}")
        return self.graph

    def _kernel_for(self, walker_cfg: Dict[str, Any], function: GraphFunction, k: int) -> BaseKernel:
        cfg = dict(walker_cfg)
        if cfg["type"] in ("laplacian", "laplacian_eps") and not cfg.get("k"):
            # Лапласову блужданию передаётся истинный k синтеза
            cfg["k"] = k
        if cfg["type"] == "laplacian_eps" and cfg.get("eps") is None:
            if self.experiment.eps is not None:
                cfg["eps"] = self.experiment.eps
            else:
                cfg["eps"] = decompose(function, self.basis, cfg["k"])[2]
        return KernelFactory.create_or_fail(cfg, self.graph, function, self.basis)

    def _build_tasks(self) -> List[Tuple[Tuple[int, int, int, int], BaseKernel, int, int]]:
        """Задания (ключ сортировки, ядро, k, зерно); функции синтезируются здесь, один раз."""
        exp = self.experiment
        walker_cfgs = self._walker_configs()
        tasks = []
        for k in exp.k_list:
            if k > self.graph.n:
                raise ValueError(f"k={k} превышает число вершин n={self.graph.n}")
            for func_idx in range(exp.functions):
                function = synth_smooth(self.basis, k, function_seed(exp.master_seed, k, func_idx),
                                        margin_ratio=config.get_positivity_margin_ratio())
                kernels = [self._kernel_for(cfg, function, k) for cfg in walker_cfgs]
                for trial_idx in range(exp.trials):
                    seed = trial_seed(exp.master_seed, k, func_idx, trial_idx)
                    for w_idx, kernel in enumerate(kernels):
                        tasks.append(((k, w_idx, func_idx, trial_idx), kernel, k, seed))
        return tasks

    def _run_one(self, key: Tuple[int, int, int, int], kernel: BaseKernel, k: int, seed: int) -> ResultRow:
        exp = self.experiment
        started = time.perf_counter_ns()
        trace = run_walk(kernel, exp.step_cap, seed, target_quantile=exp.target_quantile, stop_on_hit=True)
        elapsed = time.perf_counter_ns() - started
        described = kernel.describe()
        return ResultRow(
            family=self.graph.family,
            n=self.graph.n,
            k=k,
            algorithm=str(described["algorithm"]),
            param=str(described["param"]),
            func_idx=key[2],
            trial_idx=key[3],
            seed=seed,
            t_hit=trace.hitting_time_or_cap(),
            capped=trace.capped,
            wall_ns=elapsed if exp.record_wall_time else 0,
        )

    def run(self, show_progress: bool = True) -> List[ResultRow]:
        """Выполняет все прогоны и возвращает строки, отсортированные по (k, блуждание, функция, прогон)."""
        self._prepare_graph()
        tasks = self._build_tasks()
        self._completed = []
        total = len(tasks)
        workers = self.experiment.workers
        logger.info(f"Серия замеров: {total} прогонов, потоков {workers}")

        pbar = None
        if tqdm and show_progress:
            pbar = tqdm(
                total=total,
                desc="Прогоны блужданий",
                unit="прогон",
                ncols=80,
                bar_format='{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}] {postfix}'
            )

        ex = ThreadPoolExecutor(max_workers=workers)
        try:
            future_to_key = {ex.submit(self._run_one, key, kernel, k, seed): key for key, kernel, k, seed in tasks}
            for fut in as_completed(future_to_key):
                key = future_to_key[fut]
                self._completed.append((key, fut.result()))
                if pbar:
                    pbar.update(1)
        except BaseException:
            ex.shutdown(wait=False, cancel_futures=True)
            raise
        else:
            ex.shutdown(wait=True)
        finally:
            if pbar:
                pbar.close()

        return self.completed_rows()

    def completed_rows(self) -> List[ResultRow]:
        return [row for _, row in sorted(self._completed, key=lambda item: item[0])]

    def run_and_save(self, output_dir: Optional[str] = None, export_excel: bool = False,
                     show_progress: bool = True) -> BenchmarkResult:
        """
        Выполняет серию и записывает results.csv, summary.csv, graph.txt
        (и summary.xlsx при export_excel). При прерывании сохраняет
        готовые строки в results_partial.csv.
        """
        out_dir = Path(output_dir or self.experiment.output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        try:
            rows = self.run(show_progress=show_progress)
        except KeyboardInterrupt:
            partial = self.completed_rows()
            path = write_results_csv(partial, out_dir / "results_partial.csv")
            logger.warning(f"Серия прервана: сохранено {len(partial)} строк в {path}")
            raise

        summary = summarize(rows)
        paths = {
            "results": write_results_csv(rows, out_dir / "results.csv"),
            "summary": write_summary_csv(summary, out_dir / "summary.csv"),
            "graph": save_graph_file(self.graph, out_dir / "graph.txt"),
        }
        if export_excel:
            excel_path = SummaryExporter(str(out_dir)).export_to_excel(
                summary, "summary.xlsx", parameters=self.experiment.to_dict()
            )
            if excel_path:
                paths["excel"] = excel_path
        logger.info(f"Серия замеров завершена: {len(rows)} строк")
        return BenchmarkResult(rows=rows, summary=summary, graph=self.graph, paths=paths)
