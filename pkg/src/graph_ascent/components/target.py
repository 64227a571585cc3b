"""
Целевые плотности на вершинах для двух MH-блужданий.

- exponential: p(i) ∝ exp(γ f_i), вычисляется устойчиво через вычитание max f;
- squared: p(i) ∝ f_i², требует строгой положительности f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import logging

from .spectral import GraphFunction

logger = logging.getLogger(__name__)


class DensityUnderflowError(ValueError):
    """exp(γ·(f_i − f_max)) обнуляется в float64: плотность не строго положительна."""
    pass


@dataclass(frozen=True)
class TargetDensity:
    """Нормированная плотность p на вершинах и её экстремальные значения."""
    p: np.ndarray
    form: str
    gamma: Optional[float] = None
    source: Optional[GraphFunction] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if np.any(p <= 0) or not np.all(np.isfinite(p)):
            raise ValueError("Плотность должна быть строго положительной и конечной")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-12:
            p = p / total
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def delta_f(self) -> float:
        """δ_f = min_i p(i)."""
        return float(self.p.min())

    @property
    def Delta_f(self) -> float:
        """Δ_f = max_i p(i)."""
        return float(self.p.max())

    @property
    def n(self) -> int:
        return int(self.p.shape[0])


def exponential_density(f: GraphFunction, gamma: float) -> TargetDensity:
    """
    p(i) = exp(γ f_i) / Σ_j exp(γ f_j).

    Raises:
        ValueError: γ < 0
        DensityUnderflowError: γ·(f_max − f_min) больше ~745, вес минимума равен 0
    """
    if gamma < 0:
        raise ValueError(f"γ должно быть ≥ 0, получено γ={gamma}")
    values = np.asarray(f.values, dtype=np.float64)
    weights = np.exp(gamma * (values - values.max()))
    p = weights / weights.sum()
    if np.any(p <= 0):
        raise DensityUnderflowError(f"γ={gamma} слишком велико: exp(γ·(f_i − f_max)) обнуляется")
    return TargetDensity(p=p, form="exponential", gamma=float(gamma), source=f)


def squared_density(f: GraphFunction) -> TargetDensity:
    """
    p(i) = f_i² / ‖f‖₂².

    Raises:
        ValueError: f_i ≤ 0 хотя бы в одной вершине
    """
    values = np.asarray(f.values, dtype=np.float64)
    nonpositive = np.flatnonzero(values <= 0)
    if nonpositive.size:
        i = int(nonpositive[0])
        raise ValueError(f"Квадратичная плотность требует f > 0: f[{i}] = {values[i]}")
    squares = values * values
    return TargetDensity(p=squares / squares.sum(), form="squared", source=f)


def degree_density(degrees: np.ndarray) -> np.ndarray:
    """Стационарное распределение простого блуждания: p(i) ∝ d_i."""
    degrees = np.asarray(degrees, dtype=np.float64)
    return degrees / degrees.sum()
