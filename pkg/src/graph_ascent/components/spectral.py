"""
Спектральный компонент: лапласиан графа, собственный базис, k-гладкие функции.

Отвечает за:
- построение лапласиана L = D − W;
- полное симметричное разложение с упорядоченными собственными значениями
  и детерминированным выбором знаков собственных векторов;
- локальную кумулятивную когерентность порядка k (LC-k);
- синтез случайных k-гладких функций и разложение f = f_ks + f_r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np
import logging

from .graph_core import Graph

logger = logging.getLogger(__name__)


class EigenSolverError(RuntimeError):
    """Сбой собственного разложения; diagnostics содержит подробности."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DegenerateInputError(ValueError):
    """Гладкая компонента функции равна нулю, ε не определено."""
    pass


@dataclass(frozen=True)
class SpectralBasis:
    """Собственный базис лапласиана: λ по возрастанию, столбцы U ортонормированы."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    graph: Optional[Graph] = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    def band(self, k: int) -> np.ndarray:
        """Матрица U_k из первых k столбцов."""
        _check_order(k, self.n)
        return self.eigenvectors[:, :k]

    def has_tie_at(self, k: int, tol: float = 1e-9) -> bool:
        """Совпадают ли λ_k и λ_{k+1}: тогда класс k-гладких функций зависит от базиса."""
        if k >= self.n:
            return False
        return bool(abs(self.eigenvalues[k] - self.eigenvalues[k - 1]) <= tol)


@dataclass(frozen=True)
class GraphFunction:
    """Функция на вершинах графа с метаданными гладкости.

    Attributes:
        values: Значения f_i
        k: Порядок гладкости, если функция синтезирована как k-гладкая
        alpha: Коэффициенты α в базисе U_k
        residual: Негладкая компонента f_r (если известна)
        epsilon: Минимальное ε, при котором f ε-приближённо k-гладкая
        lift: Константа, добавленная при подъёме минимума
        basis_tie: Был ли λ_k = λ_{k+1} (базис U_k закреплён решателем)
    """
    values: np.ndarray
    k: Optional[int] = None
    alpha: Optional[np.ndarray] = field(default=None, repr=False)
    residual: Optional[np.ndarray] = field(default=None, repr=False)
    epsilon: Optional[float] = None
    lift: float = 0.0
    basis_tie: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError(f"Функция должна быть вектором, получена форма {values.shape}")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise ValueError(f"Нечисловое значение функции в вершине {bad}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def f_max(self) -> float:
        return float(self.values.max())

    @property
    def f_min(self) -> float:
        return float(self.values.min())

    @property
    def norm_sq(self) -> float:
        return float(np.dot(self.values, self.values))

    def argmax_set(self) -> np.ndarray:
        """Все вершины, на которых достигается максимум."""
        return np.flatnonzero(self.values == self.values.max())

    def top_quantile_set(self, quantile: float) -> np.ndarray:
        """Вершины из верхней доли quantile (по значению ⌈q·n⌉-й по величине вершины)."""
        threshold = quantile_threshold(self.values, quantile)
        return np.flatnonzero(self.values >= threshold)


@dataclass(frozen=True)
class CoherenceProfile:
    """Локальная кумулятивная когерентность c_i = ‖U_k^T δ_i‖₂ порядка k."""
    values: np.ndarray
    k: int

    @property
    def n(self) -> int:
        return int(self.values.shape[0])


def quantile_threshold(values: np.ndarray, quantile: float) -> float:
    """Порог попадания в верхнюю долю quantile ∈ (0, 1]."""
    if not 0.0 < quantile <= 1.0:
        raise ValueError(f"Доля вершин должна лежать в (0, 1], получено {quantile}")
    ordered = np.sort(np.asarray(values, dtype=np.float64))[::-1]
    top = max(1, int(np.ceil(quantile * len(ordered) - 1e-9)))
    return float(ordered[top - 1])


def _check_order(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"Порядок k должен лежать в 1..{n}, получено k={k}")


def laplacian(g: Graph) -> np.ndarray:
    """Плотный лапласиан L = D − W."""
    W = g.adjacency_matrix()
    return np.diag(g.degrees.astype(np.float64)) - W


def _fix_signs(U: np.ndarray, tol: float) -> np.ndarray:
    """Переворачивает столбцы так, чтобы первая ненулевая координата была положительной."""
    U = U.copy()
    for col in range(U.shape[1]):
        nonzero = np.flatnonzero(np.abs(U[:, col]) > tol)
        if nonzero.size and U[nonzero[0], col] < 0:
            U[:, col] = -U[:, col]
    return U


def eigendecompose(
    L: np.ndarray,
    graph: Optional[Graph] = None,
    orthonormality_tol: float = 1e-8,
    residual_tol: float = 1e-6,
    sign_tol: float = 1e-12,
) -> SpectralBasis:
    """
    Полное разложение симметричного лапласиана (LAPACK syevd через numpy.linalg.eigh).

    Args:
        L: Симметричная матрица n×n
        graph: Граф, которому принадлежит L (для ссылок из базиса)

    Returns:
        SpectralBasis с возрастающими λ и ортонормированными U

    Raises:
        ValueError: L не квадратная или несимметричная
        EigenSolverError: решатель не сошёлся или не прошёл проверку невязки
    """
    L = np.asarray(L, dtype=np.float64)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError(f"Ожидалась квадратная матрица, получено {L.shape}")
    if not np.allclose(L, L.T, atol=0.0, rtol=0.0):
        raise ValueError("Матрица несимметрична")
    n = L.shape[0]
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(L)
    except np.linalg.LinAlgError as e:
        raise EigenSolverError(
            f"Собственное разложение не сошлось: {e}",
            diagnostics={"n": n, "solver": "numpy.linalg.eigh", "error": str(e)},
        )
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    eigenvectors = _fix_signs(eigenvectors[:, order], sign_tol)

    orth_dev = float(np.max(np.abs(eigenvectors.T @ eigenvectors - np.eye(n))))
    residual = float(np.max(np.abs(L @ eigenvectors - eigenvectors * eigenvalues)))
    diagnostics = {"n": n, "orthonormality": orth_dev, "residual": residual}
    if orth_dev > orthonormality_tol or residual > residual_tol:
        raise EigenSolverError(
            f"Проверка разложения не пройдена: ортонормальность {orth_dev:.2e}, невязка {residual:.2e}",
            diagnostics=diagnostics,
        )
    # λ_1 = 0 с точностью решателя; фиксируем точный ноль
    if abs(eigenvalues[0]) <= orthonormality_tol:
        eigenvalues[0] = 0.0
        # Для связного графа u_1 = 1/√n точно: константы остаются константами
        if n > 1 and eigenvalues[1] > orthonormality_tol:
            eigenvectors[:, 0] = 1.0 / np.sqrt(n)
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    logger.debug(f"Собственный базис: n={n}, λ_2={eigenvalues[1] if n > 1 else 0.0:.6g}, {diagnostics}")
    return SpectralBasis(eigenvalues=eigenvalues, eigenvectors=eigenvectors, graph=graph)


def spectral_basis(g: Graph, **kwargs) -> SpectralBasis:
    """Удобная обёртка: laplacian + eigendecompose."""
    return eigendecompose(laplacian(g), graph=g, **kwargs)


def coherence_profile(basis: SpectralBasis, k: int) -> CoherenceProfile:
    """LC-k: евклидова норма i-й строки U_k."""
    U_k = basis.band(k)
    values = np.sqrt(np.einsum("ij,ij->i", U_k, U_k))
    # Погрешность округления не должна выводить c_i за [0, 1]
    values = np.clip(values, 0.0, 1.0)
    values.setflags(write=False)
    return CoherenceProfile(values=values, k=k)


def synth_smooth(
    basis: SpectralBasis,
    k: int,
    seed: int,
    positivity_margin: Optional[float] = None,
    margin_ratio: float = 1e-3,
) -> GraphFunction:
    """
    Случайная k-гладкая функция f = U_k α, α ~ N(0, I_k), поднятая по минимуму.

    После подъёма f ← f − min f + margin, так что min f = margin > 0.
    Если margin не задан, берётся margin_ratio·(max f − min f) до подъёма.

    Args:
        basis: Собственный базис
        k: Порядок гладкости
        seed: Зерно генератора α
        positivity_margin: Явный запас положительности (≥ 0)
        margin_ratio: Доля размаха для запаса по умолчанию

    Returns:
        GraphFunction с метаданными (k, α, lift, basis_tie)
    """
    _check_order(k, basis.n)
    if positivity_margin is not None and positivity_margin < 0:
        raise ValueError(f"Запас положительности должен быть ≥ 0, получено {positivity_margin}")
    rng = np.random.default_rng(seed)
    alpha = rng.standard_normal(k)
    raw = basis.band(k) @ alpha
    spread = float(raw.max() - raw.min())
    if positivity_margin is not None:
        margin = positivity_margin
    else:
        # Постоянная функция (k = 1): размах нулевой, запас берётся абсолютным
        margin = margin_ratio * spread if spread > 0 else margin_ratio
    lift = margin - float(raw.min())
    values = raw + lift
    tie = basis.has_tie_at(k)
    if tie:
        logger.debug(f"λ_{k} = λ_{k + 1}: класс {k}-гладких функций зависит от закреплённого базиса")
    return GraphFunction(values=values, k=k, alpha=alpha, residual=np.zeros(basis.n), epsilon=0.0,
                         lift=lift, basis_tie=tie)


def decompose(f: GraphFunction, basis: SpectralBasis, k: int) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Разложение f = f_ks + f_r, f_ks = U_k U_k^T f.

    Returns:
        (f_ks, f_r, ε_min), где ε_min = max_i |f_r(i)| / ‖f_ks‖₂

    Raises:
        DegenerateInputError: ‖f_ks‖₂ = 0
    """
    U_k = basis.band(k)
    values = np.asarray(f.values if isinstance(f, GraphFunction) else f, dtype=np.float64)
    f_ks = U_k @ (U_k.T @ values)
    f_r = values - f_ks
    smooth_norm = float(np.linalg.norm(f_ks))
    scale = max(float(np.linalg.norm(values)), 1.0)
    if smooth_norm <= 1e-12 * scale:
        raise DegenerateInputError(f"Гладкая компонента порядка k={k} равна нулю: ε не определено")
    eps_min = float(np.max(np.abs(f_r)) / smooth_norm)
    return f_ks, f_r, eps_min


def graph_fourier_transform(f: GraphFunction, basis: SpectralBasis) -> np.ndarray:
    """Графовое преобразование Фурье û = U^T f."""
    return basis.eigenvectors.T @ np.asarray(f.values, dtype=np.float64)


def smoothness_energy(f: GraphFunction, L: np.ndarray) -> float:
    """Энергия гладкости f^T L f."""
    values = np.asarray(f.values, dtype=np.float64)
    return float(values @ L @ values)
