"""
Компонент для чтения и записи файлов экспериментов.

Отвечает за форматы:
- список рёбер графа ("u v" на строку);
- функция на вершинах (CSV "node,value");
- дамп траектории (CSV "step,vertex,f_value,is_new_max");
- отчёт по оценкам (CSV "quantity,instance_id,value,bound,satisfied");
- результаты серии замеров и сводка (CSV, Excel).
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Union

import numpy as np
import pandas as pd
import logging

from ..config import config
from ..interfaces.walker import WalkTrace
from .graph_core import Graph, load_graph, save_graph
from .spectral import GraphFunction

logger = logging.getLogger(__name__)

RESULTS_COLUMNS = [
    "family", "n", "k", "algorithm", "param", "func_idx", "trial_idx", "seed", "t_hit", "capped", "wall_ns",
]
BOUND_REPORT_COLUMNS = ["quantity", "instance_id", "value", "bound", "satisfied"]
FUNCTION_HEADER = "node,value"
TRACE_HEADER = "step,vertex,f_value,is_new_max"


class ResultsFormatError(ValueError):
    """Файл результатов пуст или не соответствует схеме."""
    pass


# --- Функции на вершинах ---

def format_function(f: Union[GraphFunction, np.ndarray]) -> str:
    """CSV "node,value", значения в экспоненциальной записи с 17 значащими цифрами."""
    values = f.values if isinstance(f, GraphFunction) else np.asarray(f, dtype=np.float64)
    lines = [FUNCTION_HEADER]
    lines.extend(f"{i},{v:.17e}" for i, v in enumerate(values.tolist()))
    return "\n".join(lines) + "\n"


def parse_function(text: str, n: Optional[int] = None) -> GraphFunction:
    """Читает функцию из CSV "node,value"; вершины должны идти 0..n−1 по возрастанию."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or ",".join(cell.strip() for cell in rows[0]) != FUNCTION_HEADER:
        raise ValueError(f"Ожидался заголовок '{FUNCTION_HEADER}'")
    values: List[float] = []
    for line_no, row in enumerate(rows[1:], 2):
        if len(row) != 2:
            raise ValueError(f"Строка {line_no}: ожидалось 2 поля, получено {len(row)}")
        try:
            node, value = int(row[0]), float(row[1])
        except ValueError:
            raise ValueError(f"Строка {line_no}: некорректные числа {row!r}")
        if node != len(values):
            raise ValueError(f"Строка {line_no}: ожидалась вершина {len(values)}, получено {node}")
        values.append(value)
    if n is not None and len(values) != n:
        raise ValueError(f"Функция задана на {len(values)} вершинах, а граф содержит {n}")
    return GraphFunction(values=np.asarray(values))


def save_function(f: GraphFunction, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_function(f), encoding="utf-8")
    logger.info(f"Функция сохранена: {path} ({f.n} вершин)")
    return path


def load_function(path: Union[str, Path], n: Optional[int] = None) -> GraphFunction:
    return parse_function(Path(path).read_text(encoding="utf-8"), n=n)


# --- Графы ---

def save_graph_file(g: Graph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(save_graph(g), encoding="utf-8")
    logger.info(f"Граф сохранён: {path} (n={g.n}, рёбер {g.edge_count})")
    return path


def load_graph_file(path: Union[str, Path], n: Optional[int] = None, family: str = "custom") -> Graph:
    return load_graph(Path(path).read_text(encoding="utf-8"), n=n, family=family)


# --- Траектории и отчёты ---

def format_trace(trace: WalkTrace, values: np.ndarray) -> str:
    """CSV "step,vertex,f_value,is_new_max" по записанной траектории."""
    if trace.vertices is None:
        raise ValueError("Траектория записана без вершин (RecordPolicy.COUNTERS)")
    values = np.asarray(values, dtype=np.float64)
    # running_max учитывает и незаписанные шаги между записями
    maxima = trace.running_max.tolist()
    lines = [TRACE_HEADER]
    previous = -np.inf
    for idx, v in enumerate(trace.vertices.tolist()):
        value = float(values[v])
        is_new = maxima[idx] > previous and value >= maxima[idx]
        previous = maxima[idx]
        lines.append(f"{idx * trace.thin},{v},{value:.17e},{int(is_new)}")
    return "\n".join(lines) + "\n"


def save_trace(trace: WalkTrace, values: np.ndarray, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_trace(trace, values), encoding="utf-8")
    return path


def _fmt_optional(value: Optional[float]) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def write_bound_report(rows: Iterable[Mapping[str, Any]], path: Union[str, Path]) -> Path:
    """Отчёт по оценкам; отсутствующие точные значения оставляются пустыми."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BOUND_REPORT_COLUMNS)
        for row in rows:
            writer.writerow([
                row["quantity"],
                row["instance_id"],
                _fmt_optional(row.get("value")),
                _fmt_optional(row.get("bound")),
                _fmt_optional(row.get("satisfied")),
            ])
    logger.info(f"Отчёт по оценкам записан: {path}")
    return path


# --- Результаты серии замеров ---

def _as_record(row: Any) -> Dict[str, Any]:
    return asdict(row) if is_dataclass(row) else dict(row)


def results_frame(rows: Iterable[Any]) -> pd.DataFrame:
    df = pd.DataFrame([_as_record(r) for r in rows], columns=RESULTS_COLUMNS)
    if not df.empty:
        df["capped"] = df["capped"].astype(int)
    return df


def write_results_csv(rows: Iterable[Any], path: Union[str, Path]) -> Path:
    """Сырые строки результатов в заданном порядке столбцов."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df = results_frame(rows)
    df.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Результаты записаны: {path} ({len(df)} строк)")
    return path


def read_results_csv(path: Union[str, Path]) -> pd.DataFrame:
    """
    Читает файл результатов и проверяет схему.

    Raises:
        ResultsFormatError: нет строк или не хватает столбцов
    """
    path = Path(path)
    try:
        df = pd.read_csv(path, dtype={"param": str}, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise ResultsFormatError(f"Файл результатов пуст: {path}")
    missing = [c for c in RESULTS_COLUMNS if c not in df.columns]
    if missing:
        raise ResultsFormatError(f"В файле {path} нет столбцов: {', '.join(missing)}")
    if df.empty:
        raise ResultsFormatError(f"Файл результатов не содержит строк: {path}")
    return df


def write_summary_csv(summary: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    summary.to_csv(path, index=False, lineterminator="\n", float_format="%.6f")
    return path


class SummaryExporter:
    """Экспорт сводки серии замеров в Excel."""

    def __init__(self, output_dir: Optional[str] = None):
        """
        Args:
            output_dir: Папка для сохранения (по умолчанию files.results_folder)
        """
        self.output_dir = Path(output_dir or config.get_results_folder())
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def export_to_excel(self, summary: pd.DataFrame, filepath: Union[str, Path],
                        parameters: Optional[Mapping[str, Any]] = None) -> Optional[Path]:
        """
        Экспортирует сводку и параметры эксперимента в Excel.

        Args:
            summary: Сводная таблица (семейство, k, алгоритм, статистики)
            filepath: Путь к файлу; относительный путь берётся внутри output_dir
            parameters: Параметры эксперимента для второго листа
        """
        if summary is None or summary.empty:
            logger.info("Нет данных для экспорта в Excel")
            return None

        filepath = Path(filepath)
        if not filepath.is_absolute():
            filepath = self.output_dir / filepath
        if not filepath.suffix:
            filepath = filepath.with_suffix(".xlsx")

        with pd.ExcelWriter(filepath, engine="openpyxl") as writer:
            summary.to_excel(writer, sheet_name=config.get_summary_sheet_name(), index=False)
            if parameters:
                params_df = pd.DataFrame({
                    "Параметр": list(parameters.keys()),
                    "Значение": [str(v) for v in parameters.values()],
                })
                params_df.to_excel(writer, sheet_name="Параметры", index=False)

        logger.info(f"Сводка экспортирована в Excel: {filepath}")
        return filepath
