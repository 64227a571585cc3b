#!/usr/bin/env python3
"""
Интерфейс командной строки для graph_ascent

Подкоманды:
1. generate-graph - построить граф (решётка / Эрдёш–Реньи / Барабаши–Альберт)
2. synth-function - синтезировать случайную k-гладкую функцию
3. bench - серия замеров времени попадания в максимум
4. bounds - отчёт по теоретическим оценкам
5. plot - SVG-графики по файлу результатов
6. walk - одна траектория в CSV
"""

import os
import sys
import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional


def _graph_params_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    family = args.family
    if family == "grid":
        if args.rows is None or args.cols is None:
            raise ValueError("Для решётки нужны --rows и --cols")
        return {"rows": args.rows, "cols": args.cols}
    if family == "er":
        if args.n is None:
            raise ValueError("Для графа Эрдёша–Реньи нужен --n")
        return {"n": args.n, "p": args.p if args.p is not None else "auto"}
    if family == "ba":
        if args.n is None:
            raise ValueError("Для графа Барабаши–Альберт нужен --n")
        return {"n": args.n, "m": args.m}
    if family == "file":
        if not args.graph:
            raise ValueError("Для семейства file нужен --graph")
        return {"path": args.graph}
    raise ValueError(f"Неизвестное семейство '{family}'")


def cmd_generate_graph(args: argparse.Namespace) -> int:
    """Строит граф и сохраняет список рёбер."""
    from .benchmark import build_graph
    from .components.exporter import save_graph_file
    from .config import config

    print(f"🕸️ Генерация графа: {args.family}")
    graph = build_graph(args.family, _graph_params_from_args(args), args.seed)
    out = Path(args.out) if args.out else Path(config.get_graphs_folder()) / f"{args.family}_{graph.n}_s{args.seed}.txt"
    save_graph_file(graph, out)
    print(f"   Вершин: {graph.n}")
    print(f"   Рёбер: {graph.edge_count}")
    print(f"   Диаметр: {graph.diameter}")
    print(f"✅ Граф сохранён: {out}")
    return 0


def cmd_synth_function(args: argparse.Namespace) -> int:
    """Синтезирует k-гладкую функцию на графе из файла."""
    from .components.exporter import load_graph_file, save_function
    from .components.spectral import spectral_basis, synth_smooth
    from .config import config

    graph = load_graph_file(args.graph)
    basis = spectral_basis(graph)
    f = synth_smooth(basis, args.k, args.seed, positivity_margin=args.margin,
                     margin_ratio=config.get_positivity_margin_ratio())
    save_function(f, args.out)
    print(f"📈 Функция: n={f.n}, k={args.k}, f_min={f.f_min:.6g}, f_max={f.f_max:.6g}")
    if f.basis_tie:
        print(f"⚠️ λ_{args.k} = λ_{args.k + 1}: класс {args.k}-гладких функций зависит от выбранного базиса")
    print(f"✅ Функция сохранена: {args.out}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    """Серия замеров времени попадания."""
    from .benchmark import ExperimentConfig, HittingBenchmark

    overrides: Dict[str, Any] = {
        "family": args.family,
        "graph_seed": args.graph_seed,
        "k_list": args.k,
        "gammas": args.gammas,
        "include_eps": True if args.include_eps else None,
        "eps": args.eps,
        "walkers": args.walkers,
        "trials": args.trials,
        "functions": args.functions,
        "step_cap": args.step_cap,
        "master_seed": args.master_seed,
        "output_dir": args.out,
        "workers": args.workers,
        "target_quantile": args.target_quantile,
    }
    if args.family:
        overrides["graph_params"] = _graph_params_from_args(args)
    experiment = ExperimentConfig.from_sources(args.params, overrides)

    print(f"🏁 Серия замеров: семейство {experiment.family}, k={experiment.k_list}, "
          f"функций {experiment.functions}, прогонов {experiment.trials}, предел {experiment.step_cap}")
    bench = HittingBenchmark(experiment)
    try:
        result = bench.run_and_save(export_excel=args.excel, show_progress=not args.no_progress)
    except KeyboardInterrupt:
        print("\n⏹️ Прервано: готовые строки сохранены в results_partial.csv")
        return 130

    print("\n📊 Сводка:")
    for rec in result.summary.itertuples(index=False):
        print(f"   k={rec.k:<3} {rec.algorithm:<14} {rec.param:<18} "
              f"среднее {rec.mean_t_hit:10.1f}  медиана {rec.median_t_hit:8.1f}  предел {rec.cap_rate:.0%}")
    for name, path in result.paths.items():
        print(f"✅ {name}: {path}")
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    """Отчёт по оценкам для графа, функции и блуждания."""
    from .bounds_report import build_bound_report
    from .components.exporter import load_function, load_graph_file, write_bound_report
    from .components.kernel_factory import KernelFactory

    graph = load_graph_file(args.graph)
    function = load_function(args.function, n=graph.n)
    walker = KernelFactory.parse_spec(args.walker)
    t_samples = args.t_samples or None
    kwargs = {"max_nodes": args.max_nodes}
    if t_samples:
        kwargs["t_samples"] = t_samples
    rows = build_bound_report(graph, function, walker, **kwargs)
    write_bound_report(rows, args.out)
    violated = [r for r in rows if r["satisfied"] is False]
    print(f"📐 Оценок в отчёте: {len(rows)}, нарушено: {len(violated)}")
    print(f"✅ Отчёт сохранён: {args.out}")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    """SVG-графики по файлу результатов."""
    from .benchmark import summarize
    from .components.exporter import read_results_csv
    from .components.plotting import plot_hitting_times

    df = read_results_csv(args.results)
    out_dir = args.out or str(Path(args.results).parent)
    written = plot_hitting_times(summarize(df), out_dir, step_cap=args.step_cap)
    for path in written:
        print(f"🖼️ {path}")
    return 0


def cmd_walk(args: argparse.Namespace) -> int:
    """Одна траектория блуждания в CSV."""
    from .components.exporter import load_function, load_graph_file, save_trace
    from .components.kernel_factory import KernelFactory
    from .components.spectral import spectral_basis
    from .components.walkers import run_walk
    from .interfaces.walker import RecordPolicy

    graph = load_graph_file(args.graph)
    function = load_function(args.function, n=graph.n)
    walker = KernelFactory.parse_spec(args.walker)
    basis = spectral_basis(graph) if walker["type"].startswith("laplacian") else None
    kernel = KernelFactory.create_or_fail(walker, graph, function, basis)
    trace = run_walk(kernel, args.steps, args.seed, record=RecordPolicy.FULL, thin=args.thin,
                     target_quantile=args.target_quantile)
    save_trace(trace, function.values, args.out)
    hit = "не достигнут" if trace.capped else str(trace.t_hit)
    print(f"🚶 Старт {trace.start}, шагов {trace.steps_taken}, i_max={trace.i_max}, "
          f"f_max={trace.f_max:.6g}, T_hit: {hit}")
    print(f"✅ Траектория сохранена: {args.out}")
    return 0


def _add_graph_args(p: argparse.ArgumentParser, family_required: bool) -> None:
    p.add_argument("--family", choices=["grid", "er", "ba", "file"], required=family_required,
                   default=None, help="Семейство графов")
    p.add_argument("--rows", type=int, help="Строк решётки")
    p.add_argument("--cols", type=int, help="Столбцов решётки")
    p.add_argument("--n", type=int, help="Число вершин (er, ba)")
    p.add_argument("--p", type=float, help="Вероятность ребра (er; по умолчанию 1.1·ln n / n)")
    p.add_argument("--m", type=int, help="Рёбер на новую вершину (ba)")
    p.add_argument("--graph", help="Файл списка рёбер (family=file)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graph-ascent",
        description="graph_ascent - локальные случайные блуждания для максимизации гладких функций на графах",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры использования:
  graph-ascent generate-graph --family grid --rows 32 --cols 32 --out grid.txt
  graph-ascent synth-function --graph grid.txt --k 10 --seed 1 --out f.csv
  graph-ascent bench --family grid --rows 8 --cols 8 --k 5 --trials 1 --functions 1
  graph-ascent bounds --graph grid.txt --function f.csv --walker exp:1 --out bounds.csv
  graph-ascent plot --results data/results/results.csv
  graph-ascent walk --graph grid.txt --function f.csv --walker laplacian:10 --steps 1000 --out trace.csv
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate-graph", help="Построить граф")
    _add_graph_args(p, family_required=True)
    p.add_argument("--seed", type=int, default=0, help="Зерно генератора")
    p.add_argument("--out", help="Путь к файлу списка рёбер")
    p.set_defaults(handler=cmd_generate_graph)

    p = sub.add_parser("synth-function", help="Синтезировать k-гладкую функцию")
    p.add_argument("--graph", required=True, help="Файл списка рёбер")
    p.add_argument("--k", type=int, required=True, help="Порядок гладкости")
    p.add_argument("--seed", type=int, default=0, help="Зерно коэффициентов α")
    p.add_argument("--margin", type=float, default=None, help="Запас положительности после подъёма")
    p.add_argument("--out", required=True, help="CSV node,value")
    p.set_defaults(handler=cmd_synth_function)

    p = sub.add_parser("bench", help="Серия замеров времени попадания")
    p.add_argument("--params", help="YAML-файл параметров эксперимента")
    _add_graph_args(p, family_required=False)
    p.add_argument("--graph-seed", type=int, help="Зерно генератора графа")
    p.add_argument("--k", type=int, nargs="+", help="Список k")
    p.add_argument("--gammas", type=float, nargs="+", help="Список γ экспоненциального блуждания")
    p.add_argument("--include-eps", action="store_true", help="Добавить ε-вариант лапласова блуждания")
    p.add_argument("--eps", type=float, help="ε для ε-варианта (по умолчанию из разложения функции)")
    p.add_argument("--walkers", nargs="+", help="Явный список блужданий: vanilla exp:1 laplacian ...")
    p.add_argument("--trials", type=int, help="Прогонов на функцию")
    p.add_argument("--functions", type=int, help="Функций на каждое k")
    p.add_argument("--step-cap", type=int, help="Предел шагов")
    p.add_argument("--master-seed", type=int, help="Главное зерно")
    p.add_argument("--workers", type=int, help="Потоков")
    p.add_argument("--target-quantile", type=float, help="Попадание в верхнюю долю вершин (например 0.01)")
    p.add_argument("--out", help="Папка результатов")
    p.add_argument("--excel", action="store_true", help="Дополнительно выгрузить сводку в Excel")
    p.add_argument("--no-progress", action="store_true", help="Без прогресс-бара")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("bounds", help="Отчёт по теоретическим оценкам")
    p.add_argument("--graph", required=True, help="Файл списка рёбер")
    p.add_argument("--function", required=True, help="CSV node,value")
    p.add_argument("--walker", required=True, help="exp:γ | laplacian:k | laplacian_eps:k:ε")
    p.add_argument("--max-nodes", type=int, default=None, help="Предел размера точного оракула")
    p.add_argument("--t-samples", type=int, nargs="+", help="Шаги сравнения кривой TV")
    p.add_argument("--out", required=True, help="CSV отчёта")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("plot", help="SVG-графики по результатам")
    p.add_argument("--results", required=True, help="results.csv серии замеров")
    p.add_argument("--out", help="Папка для SVG (по умолчанию рядом с results.csv)")
    p.add_argument("--step-cap", type=int, default=None, help="Нарисовать линию предела шагов")
    p.set_defaults(handler=cmd_plot)

    p = sub.add_parser("walk", help="Одна траектория в CSV")
    p.add_argument("--graph", required=True, help="Файл списка рёбер")
    p.add_argument("--function", required=True, help="CSV node,value")
    p.add_argument("--walker", required=True, help="vanilla | exp:γ | laplacian:k | laplacian_eps:k:ε")
    p.add_argument("--steps", type=int, default=1000, help="Предел шагов")
    p.add_argument("--seed", type=int, default=0, help="Зерно блуждания")
    p.add_argument("--thin", type=int, default=1, help="Записывать каждый thin-й шаг")
    p.add_argument("--target-quantile", type=float, default=None, help="Попадание в верхнюю долю вершин")
    p.add_argument("--out", required=True, help="CSV траектории")
    p.set_defaults(handler=cmd_walk)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Основная функция CLI"""
    # Инициализируем логирование из конфигурации в самом начале
    from .config import config

    if os.environ.get('GRAPH_ASCENT_DEBUG') == '1':
        os.environ['GRAPH_ASCENT_LOGGING__CONSOLE_LEVEL'] = 'DEBUG'
        config._apply_env_overrides()
        print("🔍 DEBUG режим активирован через GRAPH_ASCENT_DEBUG=1")
    config._configure_logging_if_needed(force=True)

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except KeyboardInterrupt:
        print("\n⏹️ Прервано пользователем")
        return 130
    except Exception as e:
        print(f"❌ Ошибка в команде {args.command}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
