"""
graph_ascent - локальные случайные блуждания для максимизации гладких функций на графах

Этот модуль предоставляет инструменты для:
- Генерации графов (решётка, Эрдёш–Реньи, Барабаши–Альберт)
- Спектрального анализа лапласиана и синтеза k-гладких функций
- Простого, экспоненциального и лапласова блужданий
- Вычисления теоретических оценок и точных оракулов для малых графов
- Серий замеров времени попадания в максимум с выгрузкой в CSV, Excel и SVG
"""

__version__ = "0.1.0"

from .components import (
    Graph,
    GraphFunction,
    SpectralBasis,
    grid_graph,
    erdos_renyi,
    barabasi_albert,
    spectral_basis,
    coherence_profile,
    synth_smooth,
    run_walk,
    KernelFactory,
)
from . import cli

__all__ = [
    "Graph",
    "GraphFunction",
    "SpectralBasis",
    "grid_graph",
    "erdos_renyi",
    "barabasi_albert",
    "spectral_basis",
    "coherence_profile",
    "synth_smooth",
    "run_walk",
    "KernelFactory",
    "cli",
]
