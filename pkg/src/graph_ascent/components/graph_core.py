"""
Компонент представления графа и генераторов графов.

Отвечает за неизменяемое представление неориентированного невзвешенного
простого графа, генераторы трёх экспериментальных семейств (решётка,
Эрдёш–Реньи, Барабаши–Альберт) и структурные запросы: степени, соседи,
связность, диаметр. Вершины везде нумеруются с нуля.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path
import logging

logger = logging.getLogger(__name__)


class GraphGenerationError(RuntimeError):
    """Генератор не смог получить связный граф за отведённое число попыток."""
    pass


class GraphFormatError(ValueError):
    """Некорректный текст списка рёбер."""
    pass


class DisconnectedGraphError(ValueError):
    """Граф несвязен: диаметр бесконечен, оценки неприменимы."""
    pass


@dataclass(frozen=True)
class Graph:
    """Неориентированный невзвешенный простой связный граф.

    Attributes:
        n: Количество вершин
        adjacency: Отсортированные кортежи соседей по вершинам
        family: Метка семейства (grid / er / ba / custom), только для отчётов
    """
    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    family: str = field(default="custom", compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"Граф должен содержать минимум 2 вершины, получено n={self.n}")
        if len(self.adjacency) != self.n:
            raise ValueError(f"Длина списка смежности {len(self.adjacency)} не совпадает с n={self.n}")
        for i, nbrs in enumerate(self.adjacency):
            if i in nbrs:
                raise GraphFormatError(f"Петля в вершине {i}")
            if len(set(nbrs)) != len(nbrs):
                raise GraphFormatError(f"Кратное ребро у вершины {i}")
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise GraphFormatError(f"Индекс вершины {j} вне диапазона 0..{self.n - 1}")
                if i not in self.adjacency[j]:
                    raise GraphFormatError(f"Несимметричная смежность: {i}->{j} без {j}->{i}")
        if not self.is_connected():
            raise DisconnectedGraphError(f"Граф с n={self.n} несвязен")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], family: str = "custom") -> "Graph":
        """Строит граф из списка неупорядоченных рёбер."""
        neighbors: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"Петля в вершине {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"Ребро ({u}, {v}) выходит за пределы 0..{n - 1}")
            if v in neighbors[u]:
                raise GraphFormatError(f"Повторное ребро ({u}, {v})")
            neighbors[u].add(v)
            neighbors[v].add(u)
        adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbors)
        return cls(n=n, adjacency=adjacency, family=family)

    @classmethod
    def from_adjacency_matrix(cls, W: np.ndarray, family: str = "custom") -> "Graph":
        """Строит граф из симметричной 0/1 матрицы смежности."""
        W = np.asarray(W)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError(f"Ожидалась квадратная матрица, получено {W.shape}")
        if not np.array_equal(W, W.T):
            raise GraphFormatError("Матрица смежности несимметрична")
        rows, cols = np.nonzero(np.triu(W, k=1))
        if np.any(np.diag(W) != 0):
            raise GraphFormatError("Матрица смежности содержит петли")
        return cls.from_edges(W.shape[0], zip(rows.tolist(), cols.tolist()), family=family)

    # --- Производные структуры (кешируются, граф неизменяем) ---
    @cached_property
    def degrees(self) -> np.ndarray:
        """Степени вершин d_i."""
        degs = np.fromiter((len(nbrs) for nbrs in self.adjacency), dtype=np.int64, count=self.n)
        degs.setflags(write=False)
        return degs

    @property
    def d_max(self) -> int:
        return int(self.degrees.max())

    @cached_property
    def edge_count(self) -> int:
        return int(self.degrees.sum() // 2)

    @cached_property
    def neighbor_arrays(self) -> Tuple[np.ndarray, ...]:
        """Соседи в виде numpy-массивов, для векторизованных строк ядра."""
        arrays = []
        for nbrs in self.adjacency:
            arr = np.asarray(nbrs, dtype=np.int64)
            arr.setflags(write=False)
            arrays.append(arr)
        return tuple(arrays)

    @cached_property
    def sparse_adjacency(self) -> csr_matrix:
        """Разреженная матрица смежности W."""
        rows = np.repeat(np.arange(self.n), self.degrees)
        cols = np.concatenate(self.neighbor_arrays) if self.n else np.empty(0, dtype=np.int64)
        data = np.ones(len(cols), dtype=np.float64)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self.adjacency[i]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def edges(self) -> List[Tuple[int, int]]:
        """Рёбра (u, v) с u < v в лексикографическом порядке."""
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def adjacency_matrix(self) -> np.ndarray:
        """Плотная матрица смежности W (для оракулов малого размера)."""
        return self.sparse_adjacency.toarray()

    def is_connected(self) -> bool:
        n_components, _ = connected_components(self.sparse_adjacency, directed=False)
        return n_components == 1

    @cached_property
    def diameter(self) -> int:
        return diameter(self)


def _require_connected(n: int, edges: Sequence[Tuple[int, int]]) -> bool:
    if n < 2:
        return False
    if not edges:
        return False
    arr = np.asarray(edges, dtype=np.int64)
    W = csr_matrix((np.ones(len(arr)), (arr[:, 0], arr[:, 1])), shape=(n, n))
    n_components, _ = connected_components(W, directed=False)
    return n_components == 1


def grid_graph(rows: int, cols: int) -> Graph:
    """
    4-связная двумерная решётка; вершина (r, c) имеет индекс r·cols + c.

    Args:
        rows: Число строк (≥ 1)
        cols: Число столбцов (≥ 1)

    Returns:
        Граф-решётка
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"Размеры решётки должны быть положительными: {rows}x{cols}")
    if rows * cols < 2:
        raise ValueError(f"Решётка {rows}x{cols} содержит меньше двух вершин")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    graph = Graph.from_edges(rows * cols, edges, family="grid")
    logger.debug(f"Решётка {rows}x{cols}: n={graph.n}, рёбер={graph.edge_count}")
    return graph


def er_default_p(n: int, factor: float = 1.1) -> float:
    """Вероятность ребра factor·ln(n)/n (натуральный логарифм)."""
    if n < 2:
        raise ValueError(f"n должно быть ≥ 2, получено {n}")
    return min(1.0, factor * math.log(n) / n)


def erdos_renyi(n: int, p: float, seed: int, max_attempts: int = 10000) -> Graph:
    """
    Граф Эрдёша–Реньи G(n, p), перевыбираемый до первой связной реализации.

    Каждая попытка использует собственный поток, выведенный из seed
    (SeedSequence с ключом попытки), поэтому результат детерминирован.

    Raises:
        ValueError: n < 2 или p вне (0, 1]
        GraphGenerationError: max_attempts подряд несвязных графов
    """
    if n < 2:
        raise ValueError(f"n должно быть ≥ 2, получено {n}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"Вероятность ребра должна лежать в (0, 1], получено p={p}")
    upper = np.triu_indices(n, k=1)
    for attempt in range(max_attempts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(attempt,)))
        mask = rng.random(len(upper[0])) < p
        edges = list(zip(upper[0][mask].tolist(), upper[1][mask].tolist()))
        if _require_connected(n, edges):
            if attempt:
                logger.debug(f"ER(n={n}, p={p:.6f}): связный граф на попытке {attempt + 1}")
            return Graph.from_edges(n, edges, family="er")
    raise GraphGenerationError(
        f"ER(n={n}, p={p}): {max_attempts} подряд несвязных реализаций, увеличьте p"
    )


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """
    Граф Барабаши–Альберт с полным затравочным графом на m вершинах.

    Каждая новая вершина присоединяет m различных рёбер, выбирая концы
    пропорционально степени (повторный выбор с отбраковкой дубликатов).
    При нулевой суммарной степени (m = 1, одна затравочная вершина)
    выбор равномерный.
    """
    if m < 1:
        raise ValueError(f"m должно быть ≥ 1, получено {m}")
    if n <= m:
        raise ValueError(f"Требуется n > m, получено n={n}, m={m}")
    rng = np.random.default_rng(seed)
    edges: List[Tuple[int, int]] = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # Каждый конец ребра записан один раз: равномерный выбор из списка = выбор ∝ степени
    endpoints: List[int] = [v for edge in edges for v in edge]
    for v in range(m, n):
        targets: set = set()
        while len(targets) < m:
            if endpoints:
                candidate = endpoints[int(rng.integers(len(endpoints)))]
            else:
                candidate = int(rng.integers(v))
            targets.add(candidate)
        for u in sorted(targets):
            edges.append((u, v))
            endpoints.extend((u, v))
    graph = Graph.from_edges(n, edges, family="ba")
    logger.debug(f"BA(n={n}, m={m}): рёбер={graph.edge_count}")
    return graph


def diameter(g: Graph) -> int:
    """Точный диаметр через BFS из всех вершин."""
    distances = shortest_path(g.sparse_adjacency, method="D", directed=False, unweighted=True)
    if not np.all(np.isfinite(distances)):
        raise DisconnectedGraphError("Диаметр не определён: граф несвязен")
    return int(distances.max())


def save_graph(g: Graph) -> str:
    """Сериализует граф в текст: по одной паре «u v» на строку."""
    return "\n".join(f"{u} {v}" for u, v in g.edges()) + "\n"


def load_graph(edge_list_text: str, n: int = None, family: str = "custom") -> Graph:
    """
    Загружает граф из текста списка рёбер.

    Args:
        edge_list_text: Пары «u v» через пробельные символы, по одной на строку
        n: Число вершин; по умолчанию max индекс + 1

    Raises:
        GraphFormatError: некорректная строка, петля, дубликат, индекс ≥ n
        DisconnectedGraphError: граф несвязен
    """
    edges: List[Tuple[int, int]] = []
    for line_no, raw in enumerate(edge_list_text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"Строка {line_no}: ожидалось «u v», получено {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"Строка {line_no}: нечисловой индекс в {raw!r}")
        if u < 0 or v < 0:
            raise GraphFormatError(f"Строка {line_no}: отрицательный индекс в {raw!r}")
        if u == v:
            raise GraphFormatError(f"Строка {line_no}: петля в вершине {u}")
        edges.append((u, v))
    if not edges:
        raise GraphFormatError("Пустой список рёбер")
    max_index = max(max(u, v) for u, v in edges)
    if n is None:
        n = max_index + 1
    elif max_index >= n:
        raise GraphFormatError(f"Индекс вершины {max_index} ≥ n={n}")
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"Повторное ребро {key}")
        seen.add(key)
    return Graph.from_edges(n, edges, family=family)
