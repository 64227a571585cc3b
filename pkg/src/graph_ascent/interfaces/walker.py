"""
Абстрактные интерфейсы и структуры данных для локальных случайных блужданий.

Определяет контракт ядра перехода (одна строка по запросу), строку ядра,
политику записи траектории и саму траекторию с трекерами максимума.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np


class RecordPolicy(str, Enum):
    """Что сохранять во время блуждания."""
    FULL = "full"            # вся последовательность вершин (малые прогоны)
    COUNTERS = "counters"    # только счётчики и трекеры (серии замеров)


@dataclass(frozen=True)
class KernelRow:
    """Строка стохастической матрицы P_{i*} в разреженном виде.

    targets перечисляет соседей i в порядке списка смежности, последним
    идёт сама вершина i (вероятность остаться на месте).
    """
    vertex: int
    targets: np.ndarray
    probabilities: np.ndarray

    def as_dict(self) -> Dict[int, float]:
        """Ненулевые вероятности в виде {вершина: P_ij}."""
        return {int(j): float(p) for j, p in zip(self.targets, self.probabilities) if p > 0.0}

    def probability(self, j: int) -> float:
        hits = np.flatnonzero(self.targets == j)
        return float(self.probabilities[hits].sum()) if hits.size else 0.0

    @property
    def self_probability(self) -> float:
        return float(self.probabilities[-1])

    @property
    def total(self) -> float:
        return float(self.probabilities.sum())


@dataclass
class WalkTrace:
    """Результат одного блуждания.

    Attributes:
        seed: Зерно личного потока блуждания
        start: Стартовая вершина
        step_cap: Предельное число шагов T
        steps_taken: Фактически сделанных шагов
        i_max / f_max: Текущий аргмаксимум и максимум на пройденном префиксе
        t_hit: Первый шаг t с f(v_t) ≥ порога попадания; None, если порог не достигнут за T шагов
        vertices: Последовательность вершин (только при RecordPolicy.FULL)
        running_max: f_max после каждого записанного шага (только FULL)
        thin: Шаг прореживания записанной последовательности
    """
    seed: int
    start: int
    step_cap: int
    steps_taken: int
    i_max: int
    f_max: float
    t_hit: Optional[int]
    target_value: float
    vertices: Optional[np.ndarray] = field(default=None, repr=False)
    running_max: Optional[np.ndarray] = field(default=None, repr=False)
    thin: int = 1

    @property
    def capped(self) -> bool:
        return self.t_hit is None

    def hitting_time_or_cap(self) -> int:
        """T_hit, а для незавершённых блужданий значение предела."""
        return self.step_cap if self.t_hit is None else self.t_hit


class WalkKernelInterface(ABC):
    """Интерфейс локального ядра перехода."""

    kind: str

    @abstractmethod
    def row(self, i: int) -> KernelRow:
        """Вычисляет строку P_{i*} из локальных данных вершины i и её соседей."""
        pass

    @abstractmethod
    def stationary(self) -> np.ndarray:
        """Стационарное распределение, которое ядро сохраняет."""
        pass

    @abstractmethod
    def describe(self) -> Dict[str, object]:
        """Параметры ядра для отчётов (вид, γ, k, ε)."""
        pass
