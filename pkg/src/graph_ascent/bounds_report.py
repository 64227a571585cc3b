"""
Отчёт по теоретическим оценкам для одного (граф, функция, блуждание).

Оценки считаются всегда; точные значения (кривая TV, ожидаемые времена
попадания) добавляются, только если граф не превышает предел оракула.
"""

from __future__ import annotations

from typing import Any, Dict, Iterable, List, Optional

import logging

from .config import config
from .components.analysis import (
    BoundInputs,
    dense_kernel,
    envelope_slack,
    exact_expected_hitting,
    exact_tv_curve,
    hitting_bound_exponential,
    hitting_bound_laplacian,
    theta_exponential,
    theta_laplacian,
    tv_bound_exponential,
    tv_bound_laplacian,
)
from .components.graph_core import Graph
from .components.kernel_factory import KernelFactory
from .components.spectral import GraphFunction, SpectralBasis, spectral_basis

logger = logging.getLogger(__name__)

DEFAULT_T_SAMPLES = (0, 1, 2, 5, 10, 20, 50, 100, 200)
# Относительный допуск сравнения точного значения с оценкой
BOUND_RTOL = 1e-9


def within_bound(value: float, bound: float) -> bool:
    return value <= bound * (1.0 + BOUND_RTOL) + 1e-12


def _row(quantity: str, instance_id: str, value: Optional[float] = None,
         bound: Optional[float] = None) -> Dict[str, Any]:
    satisfied = None
    if value is not None and bound is not None:
        satisfied = within_bound(value, bound)
    return {"quantity": quantity, "instance_id": instance_id, "value": value, "bound": bound,
            "satisfied": satisfied}


def build_bound_report(
    graph: Graph,
    function: GraphFunction,
    walker: Dict[str, Any],
    basis: Optional[SpectralBasis] = None,
    instance_id: Optional[str] = None,
    t_samples: Iterable[int] = DEFAULT_T_SAMPLES,
    max_nodes: Optional[int] = None,
    target: Optional[Iterable[int]] = None,
) -> List[Dict[str, Any]]:
    """
    Строки отчёта "quantity,instance_id,value,bound,satisfied".

    Args:
        graph: Граф
        function: Функция на вершинах
        walker: Конфигурация блуждания (exponential / laplacian / laplacian_eps)
        basis: Собственный базис (вычисляется для лапласовых блужданий, если не задан)
        instance_id: Метка экземпляра в отчёте
        t_samples: Шаги, в которых сравнивается кривая TV
        max_nodes: Предел оракула (по умолчанию analysis.oracle_max_nodes)
        target: Целевые вершины попадания (по умолчанию все аргмаксимумы f)

    Raises:
        ValueError: для простого блуждания оценок нет (vanilla) или неизвестный тип
    """
    kind = (walker.get("type") or "").lower()
    if kind == "vanilla":
        raise ValueError("Для простого блуждания оценки не формулируются")
    cap = config.get_oracle_max_nodes() if max_nodes is None else int(max_nodes)

    if kind == "exponential":
        gamma = float(walker.get("gamma", 1.0))
        inp = BoundInputs.for_exponential(graph, function, gamma)
        theta = theta_exponential(inp)
        tv_bound = lambda t: tv_bound_exponential(inp, t)  # noqa: E731
        hit_bound = hitting_bound_exponential(inp)
        label = instance_id or f"exponential:gamma={gamma:g}"
    elif kind in ("laplacian", "laplacian_eps"):
        if basis is None:
            basis = spectral_basis(graph)
        k = int(walker.get("k") or function.k or 0)
        if k < 1:
            raise ValueError("Не задан порядок гладкости k для лапласова блуждания")
        eps = float(walker.get("eps", 0.0)) if kind == "laplacian_eps" else 0.0
        inp = BoundInputs.for_laplacian(graph, function, k, eps)
        theta = theta_laplacian(inp)
        tv_bound = lambda t: tv_bound_laplacian(inp, t)  # noqa: E731
        hit_bound = hitting_bound_laplacian(inp)
        label = instance_id or f"{kind}:k={k}" + (f";eps={eps:g}" if eps else "")
    else:
        raise ValueError(f"Неизвестный тип блуждания '{kind}'")

    rows = [
        _row("theta", label, value=theta),
        _row("M", label, value=inp.M),
        _row("t_star_hit", label, value=hit_bound),
    ]

    if graph.n > cap:
        logger.warning(f"n={graph.n} превышает предел оракула {cap}: точные значения не вычисляются")
        rows.extend(_row(f"tv_t={t}", label, bound=tv_bound(t)) for t in t_samples)
        rows.append(_row("hitting_uniform", label, bound=hit_bound))
        rows.append(_row("hitting_worst", label, bound=hit_bound))
        return rows

    kernel = KernelFactory.create_or_fail(dict(walker, k=walker.get("k") or function.k), graph, function, basis)
    if kind.startswith("laplacian"):
        rows.append(_row("envelope_slack", label, value=envelope_slack(kernel, inp.M)))
    P = dense_kernel(kernel, max_nodes=cap)
    samples = sorted(set(int(t) for t in t_samples))
    curve = exact_tv_curve(P, kernel.stationary(), t_max=samples[-1] if samples else 0)
    rows.extend(_row(f"tv_t={t}", label, value=float(curve[t]), bound=tv_bound(t)) for t in samples)

    hitting = exact_expected_hitting(P, function.argmax_set() if target is None else target)
    rows.append(_row("hitting_uniform", label, value=hitting.uniform, bound=hit_bound))
    rows.append(_row("hitting_worst", label, value=hitting.worst, bound=hit_bound))
    return rows
