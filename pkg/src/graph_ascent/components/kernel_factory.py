"""
Фабрика для создания ядер блуждания по конфигурации.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from .graph_core import Graph
from .spectral import GraphFunction, SpectralBasis, coherence_profile
from .walkers import BaseKernel, ExponentialKernel, LaplacianKernel, VanillaKernel


KERNEL_TYPES = ("vanilla", "exponential", "laplacian", "laplacian_eps")


class KernelFactory:
    """Создаёт ядра на основе конфигурации."""

    @staticmethod
    def create(kernel_cfg: Dict[str, Any], graph: Graph, function: GraphFunction,
               basis: Optional[SpectralBasis] = None) -> Optional[BaseKernel]:
        """Создаёт ядро из словаря настроек.

        Ожидаемый формат:
        {
          "type": "exponential",
          "gamma": 1.0,
          # для лапласовых ядер: "k", а для laplacian_eps ещё "eps"
        }
        """
        if not kernel_cfg:
            return None
        kernel_type = (kernel_cfg.get("type") or "").lower()
        if kernel_type == "vanilla":
            return VanillaKernel(graph, function)
        if kernel_type == "exponential":
            return ExponentialKernel(graph, function, float(kernel_cfg.get("gamma", 1.0)))
        if kernel_type in ("laplacian", "laplacian_eps"):
            if basis is None:
                raise ValueError("Лапласову ядру нужен собственный базис графа")
            k = kernel_cfg.get("k") or function.k
            if k is None:
                raise ValueError("Не задан порядок гладкости k для лапласова ядра")
            eps = float(kernel_cfg.get("eps", 0.0)) if kernel_type == "laplacian_eps" else 0.0
            return LaplacianKernel(graph, function, coherence_profile(basis, int(k)), epsilon=eps,
                                   eps_variant=kernel_type == "laplacian_eps")
        return None

    @staticmethod
    def create_or_fail(kernel_cfg: Dict[str, Any], graph: Graph, function: GraphFunction,
                       basis: Optional[SpectralBasis] = None) -> BaseKernel:
        """Создаёт ядро или выбрасывает ошибку (Fail Fast).

        Raises:
            ValueError: неизвестный тип ядра или не хватает параметров
        """
        kernel = KernelFactory.create(kernel_cfg, graph, function, basis)
        if kernel is None:
            raise ValueError(
                f"Некорректная конфигурация ядра: {kernel_cfg!r}; известные типы: {', '.join(KERNEL_TYPES)}"
            )
        return kernel

    @staticmethod
    def parse_spec(text: str) -> Dict[str, Any]:
        """Разбирает краткую запись ядра из командной строки.

        Примеры: "vanilla", "exp:1", "exponential:0.5", "laplacian", "laplacian:5",
        "laplacian_eps:5:0.01".
        """
        parts = [p.strip() for p in text.split(":")]
        name = parts[0].lower()
        if name in ("exp", "exponential"):
            return {"type": "exponential", "gamma": float(parts[1]) if len(parts) > 1 else 1.0}
        if name == "vanilla":
            return {"type": "vanilla"}
        if name == "laplacian":
            return {"type": "laplacian", "k": int(parts[1]) if len(parts) > 1 else None}
        if name in ("laplacian_eps", "laplacian-eps"):
            if len(parts) < 3:
                raise ValueError(f"Ожидалось laplacian_eps:k:eps, получено '{text}'")
            return {"type": "laplacian_eps", "k": int(parts[1]), "eps": float(parts[2])}
        raise ValueError(f"Неизвестный тип ядра '{text}'; известные типы: {', '.join(KERNEL_TYPES)}")


def default_walker_set(gammas: List[float], include_eps: bool = False) -> List[Dict[str, Any]]:
    """Набор блужданий серии замеров: vanilla, exponential для каждого γ, laplacian."""
    walkers: List[Dict[str, Any]] = [{"type": "vanilla"}]
    walkers.extend({"type": "exponential", "gamma": float(g)} for g in gammas)
    walkers.append({"type": "laplacian"})
    if include_eps:
        walkers.append({"type": "laplacian_eps"})
    return walkers
