"""
Статические SVG-графики сравнения времён попадания.

Один файл на семейство графов: по оси x порядок гладкости k, по оси y
среднее T_hit (логарифмическая шкала), по ломаной на алгоритм, подписи
с долей прогонов, упёршихся в предел шагов.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, List, Tuple, Union

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
import pandas as pd  # noqa: E402
import logging  # noqa: E402

logger = logging.getLogger(__name__)

# Фиксированная соль идентификаторов SVG: одинаковый вход → одинаковые байты
matplotlib.rcParams["svg.hashsalt"] = "graph-ascent"
matplotlib.rcParams["svg.fonttype"] = "path"

# (k, среднее T_hit, доля упёршихся)
SeriesPoint = Tuple[int, float, float]

_K_PARAM = re.compile(r"(^|;)k=\d+")


def series_label(algorithm: str, param: str) -> str:
    """Подпись ломаной: алгоритм и параметры без k (k идёт по оси x)."""
    rest = _K_PARAM.sub("", str(param or "")).strip(";")
    return f"{algorithm} ({rest})" if rest else algorithm


def build_plot_series(summary: pd.DataFrame) -> Dict[str, Dict[str, List[SeriesPoint]]]:
    """Группирует сводку: семейство → подпись алгоритма → точки, упорядоченные по k."""
    series: Dict[str, Dict[str, List[SeriesPoint]]] = {}
    ordered = summary.sort_values(["family", "algorithm", "param", "k"], kind="stable")
    for rec in ordered.itertuples(index=False):
        label = series_label(rec.algorithm, rec.param)
        points = series.setdefault(str(rec.family), {}).setdefault(label, [])
        points.append((int(rec.k), float(rec.mean_t_hit), float(rec.cap_rate)))
    for by_label in series.values():
        for points in by_label.values():
            points.sort(key=lambda p: p[0])
    return series


def plot_family(family: str, by_label: Dict[str, List[SeriesPoint]], out_path: Union[str, Path],
                step_cap: int = None) -> Path:
    """Рисует и сохраняет один SVG для семейства графов."""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot(1, 1, 1)
    for label in sorted(by_label):
        points = by_label[label]
        ks = [p[0] for p in points]
        means = [p[1] for p in points]
        linestyle = "-" if len(points) > 1 else "none"
        ax.plot(ks, means, marker="o", linestyle=linestyle, label=label)
        for k, mean, cap_rate in points:
            if cap_rate > 0:
                ax.annotate(f"cap {cap_rate:.0%}", (k, mean), textcoords="offset points",
                            xytext=(4, 4), fontsize=7)
    # Среднее может быть 0 (старт в максимуме): линейный участок около нуля
    ax.set_yscale("symlog", linthresh=1.0)
    if step_cap:
        ax.axhline(step_cap, color="grey", linestyle=":", linewidth=0.8)
    ax.set_xlabel("k")
    ax.set_ylabel("mean T_hit")
    ax.set_title(f"{family}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    logger.info(f"График сохранён: {out_path}")
    return out_path


def plot_hitting_times(summary: pd.DataFrame, out_dir: Union[str, Path], step_cap: int = None) -> List[Path]:
    """
    SVG для каждого семейства графов из сводки.

    Raises:
        ValueError: пустая сводка
    """
    if summary is None or summary.empty:
        raise ValueError("Нет данных для построения графиков")
    out_dir = Path(out_dir)
    written = []
    for family, by_label in sorted(build_plot_series(summary).items()):
        written.append(plot_family(family, by_label, out_dir / f"hitting_{family}.svg", step_cap=step_cap))
    return written
