"""
Ядра локальных случайных блужданий и цикл запуска.

Каждое ядро вычисляет одну строку P_{i*} по запросу из локальных данных
(значения функции, степени, когерентности вершины i и её соседей). Матрица
n×n в пути блуждания не строится никогда; плотные матрицы существуют только
в оракулах модуля analysis.

Виды ядер:
- vanilla: P = D⁻¹W;
- exponential(γ): MH с предложением D⁻¹W и целью p ∝ exp(γf);
- laplacian(k): MH с предложением Q′_ij ∝ c_j² и целью p ∝ f²;
- laplacian_eps(k, ε): то же с весами (c_j + ε)².
"""

from __future__ import annotations

import bisect
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import logging

from ..config import config
from ..interfaces.walker import KernelRow, RecordPolicy, WalkKernelInterface, WalkTrace
from .graph_core import Graph
from .spectral import CoherenceProfile, GraphFunction, quantile_threshold
from .target import degree_density, exponential_density, squared_density

logger = logging.getLogger(__name__)


class DegenerateProposalError(ValueError):
    """Сумма весов предложения по соседям равна нулю: S_i = 0."""
    pass


class DegenerateCoherenceError(ValueError):
    """Нулевая когерентность у вершины или соседа: отношение R не определено."""
    pass


class BaseKernel(WalkKernelInterface):
    """Общая часть ядер: проверка вершины и кеш строк для выборки."""

    kind = "base"

    def __init__(self, graph: Graph, function: Optional[GraphFunction] = None):
        if function is not None and function.n != graph.n:
            raise ValueError(f"Длина функции {function.n} не совпадает с n={graph.n}")
        self.graph = graph
        self.function = function
        # vertex -> (targets, cumulative); заполняется лениво, O(|E|) памяти
        self._sampling_cache: Dict[int, Tuple[List[int], List[float]]] = {}

    def _check_vertex(self, i: int) -> int:
        i = int(i)
        if not 0 <= i < self.graph.n:
            raise ValueError(f"Вершина {i} вне диапазона 0..{self.graph.n - 1}")
        return i

    def row(self, i: int) -> KernelRow:
        i = self._check_vertex(i)
        nbrs = self.graph.neighbor_arrays[i]
        moves = self._move_probabilities(i, nbrs)
        stay = max(0.0, 1.0 - float(moves.sum()))
        targets = np.append(nbrs, i)
        probabilities = np.append(moves, stay)
        targets.setflags(write=False)
        probabilities.setflags(write=False)
        return KernelRow(vertex=i, targets=targets, probabilities=probabilities)

    def _move_probabilities(self, i: int, nbrs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sampling_row(self, i: int) -> Tuple[List[int], List[float]]:
        """Строка в виде (вершины, накопленные вероятности) для выборки bisect."""
        cached = self._sampling_cache.get(i)
        if cached is None:
            row = self.row(i)
            cached = (row.targets.tolist(), np.cumsum(row.probabilities).tolist())
            self._sampling_cache[i] = cached
        return cached

    def describe(self) -> Dict[str, object]:
        return {"algorithm": self.kind, "param": ""}


class VanillaKernel(BaseKernel):
    """Простое блуждание P = D⁻¹W; стационарное распределение ∝ степеням."""

    kind = "vanilla"

    def _move_probabilities(self, i: int, nbrs: np.ndarray) -> np.ndarray:
        return np.full(len(nbrs), 1.0 / len(nbrs))

    def stationary(self) -> np.ndarray:
        return degree_density(self.graph.degrees)


class ExponentialKernel(BaseKernel):
    """MH-блуждание с целью p ∝ exp(γf) и предложением D⁻¹W.

    P_ij = (1/d_i)·min(1, e^{γ(f_j − f_i)}·d_i/d_j) = min(1/d_i, e^{γ(f_j − f_i)}/d_j).
    """

    kind = "exponential"

    def __init__(self, graph: Graph, function: GraphFunction, gamma: float,
                 log_space_threshold: Optional[float] = None):
        if function is None:
            raise ValueError("Экспоненциальному ядру нужна функция f")
        if gamma < 0:
            raise ValueError(f"γ должно быть ≥ 0, получено γ={gamma}")
        super().__init__(graph, function)
        self.gamma = float(gamma)
        self.log_space_threshold = (
            config.get_log_space_threshold() if log_space_threshold is None else float(log_space_threshold)
        )

    def _move_probabilities(self, i: int, nbrs: np.ndarray) -> np.ndarray:
        values = self.function.values
        degrees = self.graph.degrees
        d_i = float(degrees[i])
        d_j = degrees[nbrs].astype(np.float64)
        exponent = self.gamma * (values[nbrs] - values[i])
        if exponent.size and float(np.max(np.abs(exponent))) > self.log_space_threshold:
            log_p = np.minimum(-np.log(d_i), exponent - np.log(d_j))
            return np.exp(log_p)
        return np.minimum(1.0 / d_i, np.exp(exponent) / d_j)

    def stationary(self) -> np.ndarray:
        return exponential_density(self.function, self.gamma).p

    def describe(self) -> Dict[str, object]:
        return {"algorithm": self.kind, "param": f"gamma={self.gamma:g}"}


class LaplacianKernel(BaseKernel):
    """MH-блуждание с лапласовым предложением и целью p ∝ f².

    Q′_ij = w_j / S_i, w_j = (c_j + ε)², S_i = Σ_{j∈N(i)} w_j;
    P_ij = Q′_ij·min(1, (f_j²/f_i²)(w_i/w_j)(S_i/S_j)) = min(w_j/S_i, (f_j²/f_i²)·w_i/S_j).
    """

    kind = "laplacian"

    def __init__(self, graph: Graph, function: Optional[GraphFunction], coherence: CoherenceProfile,
                 epsilon: float = 0.0, eps_variant: Optional[bool] = None):
        if coherence.n != graph.n:
            raise ValueError(f"Длина профиля когерентности {coherence.n} не совпадает с n={graph.n}")
        if epsilon < 0:
            raise ValueError(f"ε должно быть ≥ 0, получено ε={epsilon}")
        super().__init__(graph, function)
        if function is not None:
            # Проверка строгой положительности f
            self._density = squared_density(function)
        else:
            self._density = None
        self.coherence = coherence
        self.epsilon = float(epsilon)
        # Вид в отчётах: явный запрос ε-варианта или ε > 0
        if eps_variant is None:
            eps_variant = self.epsilon > 0
        if eps_variant:
            self.kind = "laplacian_eps"
        weights = (coherence.values + self.epsilon) ** 2
        weights.setflags(write=False)
        self.weights = weights
        # Суммы по соседям считаются один раз на (граф, k, ε)
        sums = np.asarray(graph.sparse_adjacency @ weights, dtype=np.float64)
        sums.setflags(write=False)
        self.neighbor_sums = sums

    def proposal_row(self, i: int) -> KernelRow:
        """Строка предложения Q′_{i*} (без шага принятия)."""
        i = self._check_vertex(i)
        nbrs = self.graph.neighbor_arrays[i]
        S_i = float(self.neighbor_sums[i])
        if S_i <= 0.0:
            raise DegenerateProposalError(f"S_{i} = 0: все соседи вершины {i} имеют нулевую когерентность")
        targets = np.append(nbrs, i)
        probabilities = np.append(self.weights[nbrs] / S_i, 0.0)
        return KernelRow(vertex=i, targets=targets, probabilities=probabilities)

    def _move_probabilities(self, i: int, nbrs: np.ndarray) -> np.ndarray:
        if self.function is None:
            raise ValueError("Лапласову ядру нужна функция f для шага принятия")
        S_i = float(self.neighbor_sums[i])
        if S_i <= 0.0:
            raise DegenerateProposalError(f"S_{i} = 0: все соседи вершины {i} имеют нулевую когерентность")
        w_i = float(self.weights[i])
        w_j = self.weights[nbrs]
        if w_i <= 0.0 or np.any(w_j <= 0.0):
            bad = i if w_i <= 0.0 else int(nbrs[np.flatnonzero(w_j <= 0.0)[0]])
            raise DegenerateCoherenceError(f"Нулевая когерентность в вершине {bad}: R({i}, ·) не определено")
        values = self.function.values
        ratio_sq = (values[nbrs] / values[i]) ** 2
        S_j = self.neighbor_sums[nbrs]
        return np.minimum(w_j / S_i, ratio_sq * w_i / S_j)

    def stationary(self) -> np.ndarray:
        if self._density is None:
            raise ValueError("Стационарное распределение требует функцию f")
        return self._density.p

    def describe(self) -> Dict[str, object]:
        if self.kind == "laplacian_eps":
            return {"algorithm": self.kind, "param": f"k={self.coherence.k};eps={self.epsilon:g}"}
        return {"algorithm": self.kind, "param": f"k={self.coherence.k}"}


# --- Функциональный интерфейс строк ядра ---

def vanilla_row(g: Graph, i: int) -> KernelRow:
    """P_ij = 1/d_i для j ∈ N(i), P_ii = 0."""
    return VanillaKernel(g).row(i)


def exponential_row(g: Graph, f: GraphFunction, gamma: float, i: int) -> KernelRow:
    return ExponentialKernel(g, f, gamma).row(i)


def laplacian_proposal_row(g: Graph, coh: CoherenceProfile, i: int, eps: float = 0.0) -> KernelRow:
    """Q′_ij = c_j² / S_i для j ∈ N(i)."""
    return LaplacianKernel(g, None, coh, epsilon=eps).proposal_row(i)


def laplacian_row(g: Graph, f: GraphFunction, coh: CoherenceProfile, i: int) -> KernelRow:
    return LaplacianKernel(g, f, coh).row(i)


def laplacian_eps_row(g: Graph, f: GraphFunction, coh: CoherenceProfile, eps: float, i: int) -> KernelRow:
    return LaplacianKernel(g, f, coh, epsilon=eps).row(i)


# --- Запуск блуждания ---

def _step_stream(kernel: BaseKernel, start: int, steps: int, rng: np.random.Generator,
                 block: int) -> Iterator[int]:
    """Выдаёт вершины v_1..v_steps; равномерные числа берутся блоками из потока rng."""
    current = start
    remaining = steps
    while remaining > 0:
        uniforms = rng.random(min(block, remaining)).tolist()
        remaining -= len(uniforms)
        for u in uniforms:
            targets, cumulative = kernel.sampling_row(current)
            idx = bisect.bisect_right(cumulative, u * cumulative[-1])
            current = targets[min(idx, len(targets) - 1)]
            yield current


def _resolve_target(values: np.ndarray, target_value: Optional[float], target_quantile: Optional[float]) -> float:
    if target_value is not None:
        return float(target_value)
    if target_quantile is not None:
        return quantile_threshold(values, target_quantile)
    return float(values.max())


def run_walk(
    kernel: BaseKernel,
    T: int,
    seed: int,
    record: RecordPolicy = RecordPolicy.COUNTERS,
    target_value: Optional[float] = None,
    target_quantile: Optional[float] = None,
    stop_on_hit: bool = False,
    thin: int = 1,
    start: Optional[int] = None,
) -> WalkTrace:
    """
    Равномерный (или заданный) старт, затем до T шагов по строкам ядра.

    Порог попадания известен вызывающей стороне (по умолчанию глобальный
    максимум f): T_hit есть первый шаг t, на котором f(v_t) достигает порога.

    Args:
        kernel: Ядро перехода с функцией f
        T: Предел числа шагов (≥ 0)
        seed: Зерно личного потока блуждания
        record: Политика записи траектории
        target_value: Явный порог попадания
        target_quantile: Порог как верхняя доля вершин (если target_value не задан)
        stop_on_hit: Остановиться на первом попадании
        thin: Прореживание записанной траектории (каждый thin-й шаг)
        start: Фиксированная стартовая вершина (по умолчанию равномерная)

    Returns:
        WalkTrace
    """
    if T < 0:
        raise ValueError(f"Предел шагов должен быть ≥ 0, получено T={T}")
    if thin < 1:
        raise ValueError(f"Прореживание должно быть ≥ 1, получено {thin}")
    if kernel.function is None:
        raise ValueError("Для отслеживания максимума ядру нужна функция f")
    values_arr = kernel.function.values
    values = values_arr.tolist()
    threshold = _resolve_target(values_arr, target_value, target_quantile)

    rng = np.random.default_rng(seed)
    if start is None:
        start = int(rng.integers(kernel.graph.n))
    else:
        start = kernel._check_vertex(start)

    i_max, f_max = start, values[start]
    t_hit = 0 if values[start] >= threshold else None
    full = record == RecordPolicy.FULL
    path: List[int] = [start] if full else []
    maxima: List[float] = [f_max] if full else []

    steps_taken = 0
    if not (stop_on_hit and t_hit is not None):
        for t, v in enumerate(_step_stream(kernel, start, T, rng, config.get_sample_block()), 1):
            steps_taken = t
            value = values[v]
            if value > f_max:
                f_max, i_max = value, v
            if full and t % thin == 0:
                path.append(v)
                maxima.append(f_max)
            if t_hit is None and value >= threshold:
                t_hit = t
                if stop_on_hit:
                    break

    return WalkTrace(
        seed=int(seed),
        start=start,
        step_cap=int(T),
        steps_taken=steps_taken,
        i_max=int(i_max),
        f_max=float(f_max),
        t_hit=t_hit,
        target_value=threshold,
        vertices=np.asarray(path, dtype=np.int64) if full else None,
        running_max=np.asarray(maxima, dtype=np.float64) if full else None,
        thin=thin,
    )


def occupation_counts(kernel: BaseKernel, T: int, burn_in: int, seed: int) -> np.ndarray:
    """Число посещений вершин на шагах (burn_in, T]."""
    if T <= burn_in:
        raise ValueError(f"Требуется T > burn_in, получено T={T}, burn_in={burn_in}")
    if burn_in < 0:
        raise ValueError(f"burn_in должно быть ≥ 0, получено {burn_in}")
    rng = np.random.default_rng(seed)
    start = int(rng.integers(kernel.graph.n))
    counts = np.zeros(kernel.graph.n, dtype=np.int64)
    for t, v in enumerate(_step_stream(kernel, start, T, rng, config.get_sample_block()), 1):
        if t > burn_in:
            counts[v] += 1
    return counts


def occupation_distribution(kernel: BaseKernel, T: int, burn_in: int, seed: int) -> np.ndarray:
    """Эмпирическое распределение посещений на шагах (burn_in, T]."""
    counts = occupation_counts(kernel, T, burn_in, seed)
    return counts / counts.sum()


def empirical_argmax(counts_or_trace) -> int:
    """Самая посещаемая вершина (по счётчикам или по полной траектории)."""
    if isinstance(counts_or_trace, WalkTrace):
        if counts_or_trace.vertices is None:
            raise ValueError("Траектория записана без вершин (RecordPolicy.COUNTERS)")
        counts = np.bincount(counts_or_trace.vertices)
    else:
        counts = np.asarray(counts_or_trace)
    return int(np.argmax(counts))
