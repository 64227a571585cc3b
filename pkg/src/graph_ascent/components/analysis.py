"""
Теоретические оценки и точные оракулы для малых графов.

Оценки:
- θ и геометрическая оценка расстояния по вариации для обоих MH-блужданий;
- оценки ожидаемого времени попадания в максимум;
- оценка хвоста времени попадания с высокой вероятностью;
- константа доминирования M для лапласова предложения.

Оракулы (только при n ≤ analysis.oracle_max_nodes):
- плотная матрица ядра из построчных вычислений;
- стационарное распределение прямым решением линейной системы;
- точная кривая TV(P^t_{i*}, p_f) по степеням матрицы;
- точные ожидаемые времена попадания через систему первого шага.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import logging
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ..config import config
from .graph_core import Graph
from .spectral import GraphFunction
from .target import TargetDensity, exponential_density, squared_density
from .walkers import BaseKernel, LaplacianKernel

logger = logging.getLogger(__name__)


class OracleSizeError(ValueError):
    """Граф слишком велик для плотного оракула."""
    pass


class HittingSystemError(RuntimeError):
    """Система первого шага вырождена: цель недостижима из некоторых вершин."""
    pass


@dataclass(frozen=True)
class BoundInputs:
    """Параметры графа и функции, от которых зависят оценки.

    Attributes:
        r: Диаметр графа
        d_max: Максимальная степень
        delta_f / Delta_f: min и max целевой плотности
        gamma: γ экспоненциального блуждания (None для лапласова)
        f_max / f_min: Экстремальные значения функции
        M: Константа доминирования лапласова предложения
        norm_sq: ‖f‖₂²
        n: Число вершин
        k: Порядок гладкости
        eps: ε приближённой гладкости
    """
    r: int
    d_max: int
    delta_f: float
    Delta_f: float
    gamma: Optional[float]
    f_max: float
    f_min: float
    M: float
    norm_sq: float
    n: int
    k: int = 1
    eps: float = 0.0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"Диаметр должен быть ≥ 1, получено r={self.r}")
        if not 0.0 < self.delta_f <= self.Delta_f < 1.0:
            raise ValueError(
                f"Ожидалось 0 < δ_f ≤ Δ_f < 1, получено δ_f={self.delta_f}, Δ_f={self.Delta_f}"
            )
        if self.M < self.k:
            raise ValueError(f"Константа доминирования M={self.M} меньше k={self.k}")

    @classmethod
    def for_exponential(cls, graph: Graph, function: GraphFunction, gamma: float) -> "BoundInputs":
        density = exponential_density(function, gamma)
        return cls._build(graph, function, density, gamma=float(gamma), k=1, eps=0.0)

    @classmethod
    def for_laplacian(cls, graph: Graph, function: GraphFunction, k: int, eps: float = 0.0) -> "BoundInputs":
        density = squared_density(function)
        return cls._build(graph, function, density, gamma=None, k=int(k), eps=float(eps))

    @classmethod
    def _build(cls, graph: Graph, function: GraphFunction, density: TargetDensity,
               gamma: Optional[float], k: int, eps: float) -> "BoundInputs":
        return cls(
            r=graph.diameter,
            d_max=graph.d_max,
            delta_f=density.delta_f,
            Delta_f=density.Delta_f,
            gamma=gamma,
            f_max=function.f_max,
            f_min=function.f_min,
            M=dominance_M(k, graph.n, eps),
            norm_sq=function.norm_sq,
            n=graph.n,
            k=k,
            eps=eps,
        )


# --- Оценки ---

def dominance_M(k: int, n: int, eps: float) -> float:
    """M = k при ε = 0, иначе M = k + 2k√n·ε + n·ε²."""
    if k < 1 or n < 1:
        raise ValueError(f"Требуется k ≥ 1 и n ≥ 1, получено k={k}, n={n}")
    if eps < 0:
        raise ValueError(f"ε должно быть ≥ 0, получено ε={eps}")
    if eps == 0:
        return float(k)
    return k + 2.0 * k * math.sqrt(n) * eps + n * eps * eps


def _clamp_theta(raw: float) -> float:
    if raw < 0.0:
        logger.debug(f"θ = {raw:.6g} < 0, обрезано до 0")
        return 0.0
    return raw


def theta_exponential(inp: BoundInputs) -> float:
    """θ = max(0, 1 − δ_f^{r−1} / (d_max·Δ_f)^r)."""
    return _clamp_theta(1.0 - inp.delta_f ** (inp.r - 1) / (inp.d_max * inp.Delta_f) ** inp.r)


def theta_laplacian(inp: BoundInputs) -> float:
    """θ = max(0, 1 − δ_f^{r−1} / M^r)."""
    return _clamp_theta(1.0 - inp.delta_f ** (inp.r - 1) / inp.M ** inp.r)


def _geometric_tv(theta: float, r: int, t: int) -> float:
    if t < 0:
        raise ValueError(f"Номер шага должен быть ≥ 0, получено t={t}")
    return theta ** (t // r)


def tv_bound_exponential(inp: BoundInputs, t: int) -> float:
    return _geometric_tv(theta_exponential(inp), inp.r, t)


def tv_bound_laplacian(inp: BoundInputs, t: int) -> float:
    return _geometric_tv(theta_laplacian(inp), inp.r, t)


def hitting_bound_exponential(inp: BoundInputs) -> float:
    """E[T_hit] ≤ d_max^r · exp(γ(r−1)(f_max − f_min))."""
    gamma = inp.gamma or 0.0
    log_bound = inp.r * math.log(inp.d_max) + gamma * (inp.r - 1) * (inp.f_max - inp.f_min)
    return _exp_or_inf(log_bound)


def hitting_bound_laplacian(inp: BoundInputs) -> float:
    """E[T_hit] ≤ (M‖f‖²)^r / (f_max² · f_min^{2(r−1)})."""
    if inp.f_min <= 0:
        raise ValueError(f"Оценка требует строго положительной функции, f_min={inp.f_min}")
    log_bound = (
        inp.r * math.log(inp.M * inp.norm_sq)
        - 2.0 * math.log(inp.f_max)
        - 2.0 * (inp.r - 1) * math.log(inp.f_min)
    )
    return _exp_or_inf(log_bound)


def _exp_or_inf(log_value: float) -> float:
    # exp(709.78) переполняет float64
    return math.exp(log_value) if log_value < 709.0 else math.inf


def highprob_hitting_bound(t_star: float, s: float, t: float) -> float:
    """P[T_hit > t] ≤ min(1, (t*/s)^⌊t/s⌋)."""
    if s <= 0:
        raise ValueError(f"Требуется s > 0, получено s={s}")
    if t < 0:
        raise ValueError(f"Требуется t ≥ 0, получено t={t}")
    power = math.floor(t / s)
    base = t_star / s
    if power == 0 or base >= 1.0:
        return 1.0
    return min(1.0, base ** power)


# --- Оракулы ---

def dense_kernel(kernel: BaseKernel, max_nodes: Optional[int] = None) -> np.ndarray:
    """
    Плотная матрица P из построчных вычислений ядра.

    Raises:
        OracleSizeError: n превышает предел оракула
    """
    cap = config.get_oracle_max_nodes() if max_nodes is None else int(max_nodes)
    n = kernel.graph.n
    if n > cap:
        raise OracleSizeError(f"n={n} превышает предел плотного оракула {cap}")
    P = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        row = kernel.row(i)
        np.add.at(P[i], row.targets, row.probabilities)
    logger.debug(f"Плотное ядро {kernel.kind}: n={n}")
    return P


def stationary_distribution(P: np.ndarray) -> np.ndarray:
    """Левый собственный вектор πP = π, Σπ = 1, прямым решением линейной системы."""
    P = np.asarray(P, dtype=np.float64)
    n = P.shape[0]
    A = P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as e:
        raise ValueError(f"Стационарное распределение не единственно: {e}")
    return pi


def tv_distance(mu: np.ndarray, nu: np.ndarray) -> float:
    """½ Σ_j |μ(j) − ν(j)|."""
    return 0.5 * float(np.abs(np.asarray(mu) - np.asarray(nu)).sum())


def exact_tv_curve(P: np.ndarray, p_f: np.ndarray, t_max: Optional[int] = None) -> np.ndarray:
    """max_i TV(P^t_{i*}, p_f) для t = 0..t_max."""
    t_max = config.get_tv_t_max() if t_max is None else int(t_max)
    if t_max < 0:
        raise ValueError(f"t_max должно быть ≥ 0, получено {t_max}")
    P = np.asarray(P, dtype=np.float64)
    p_f = np.asarray(p_f, dtype=np.float64)
    curve = np.empty(t_max + 1)
    power = np.eye(P.shape[0])
    for t in range(t_max + 1):
        curve[t] = 0.5 * np.abs(power - p_f).sum(axis=1).max()
        power = power @ P
    return curve


@dataclass(frozen=True)
class HittingTimes:
    """Точные ожидаемые времена попадания в целевое множество."""
    per_start: np.ndarray
    uniform: float
    worst: float
    target: np.ndarray


def exact_expected_hitting(P: np.ndarray, target: Iterable[int]) -> HittingTimes:
    """
    Система первого шага: h_i = 0 на цели, h_i = 1 + Σ_j P_ij h_j вне её.

    Raises:
        ValueError: пустое множество цели
        HittingSystemError: цель недостижима из некоторых вершин
    """
    P = np.asarray(P, dtype=np.float64)
    n = P.shape[0]
    target_idx = np.unique(np.asarray(list(target), dtype=np.int64))
    if target_idx.size == 0:
        raise ValueError("Целевое множество пусто")
    if target_idx.min() < 0 or target_idx.max() >= n:
        raise ValueError(f"Целевые вершины вне диапазона 0..{n - 1}")

    # Достижимость цели: пути в графе переходов с P_ij > 0
    reverse = csr_matrix((P.T > 0).astype(np.float64))
    dist = shortest_path(reverse, method="D", unweighted=True, indices=target_idx)
    reach = np.isfinite(np.atleast_2d(dist)).any(axis=0)
    if not reach.all():
        bad = int(np.flatnonzero(~reach)[0])
        raise HittingSystemError(f"Цель недостижима из вершины {bad}")

    is_target = np.zeros(n, dtype=bool)
    is_target[target_idx] = True
    rest = np.flatnonzero(~is_target)
    h = np.zeros(n)
    if rest.size:
        A = np.eye(rest.size) - P[np.ix_(rest, rest)]
        try:
            h[rest] = np.linalg.solve(A, np.ones(rest.size))
        except np.linalg.LinAlgError as e:
            raise HittingSystemError(f"Система первого шага вырождена: {e}")
        if not np.all(np.isfinite(h)) or np.any(h < 0):
            raise HittingSystemError("Решение системы первого шага некорректно")
    logger.debug(f"Оракул попадания: n={n}, |цель|={target_idx.size}, max h={h.max():.6g}")
    return HittingTimes(per_start=h, uniform=float(h.mean()), worst=float(h.max()), target=target_idx)


def envelope_slack(kernel: LaplacianKernel, M: float) -> float:
    """min по рёбрам Q′_ij − p_f(j)/M; неотрицательно, когда выполнено условие доминирования."""
    p = kernel.stationary()
    slack = math.inf
    for i in range(kernel.graph.n):
        row = kernel.proposal_row(i)
        nbrs = row.targets[:-1]
        slack = min(slack, float(np.min(row.probabilities[:-1] - p[nbrs] / M)))
    return slack
