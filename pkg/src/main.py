#!/usr/bin/env python3
"""
Основной скрипт graph_ascent

Простая точка входа для демонстрации возможностей проекта.
Для полного функционала используйте: python -m graph_ascent.cli
"""

import sys
from pathlib import Path

# Добавляем путь к модулям
sys.path.insert(0, str(Path(__file__).parent))

from graph_ascent import KernelFactory, coherence_profile, grid_graph, run_walk, spectral_basis, synth_smooth
from graph_ascent.benchmark import trial_seed


def demo_walks():
    """Демонстрация трёх блужданий на решётке 16×16"""
    print("=== Демонстрация graph_ascent ===\n")

    graph = grid_graph(16, 16)
    basis = spectral_basis(graph)
    k = 5
    f = synth_smooth(basis, k, seed=1)
    c = coherence_profile(basis, k)
    print(f"🕸️ Решётка 16×16: n={graph.n}, рёбер {graph.edge_count}, диаметр {graph.diameter}")
    print(f"📈 {k}-гладкая функция: f_max={f.f_max:.4f}, аргмаксимумы {f.argmax_set().tolist()}")
    print(f"🔎 Когерентность LC-{k}: min={c.values.min():.4f}, max={c.values.max():.4f}")

    print("\n🚶 Время попадания в максимум (5 прогонов, предел 10000 шагов):")
    for spec in ("vanilla", "exp:0", "exp:1", f"laplacian:{k}"):
        kernel = KernelFactory.create_or_fail(KernelFactory.parse_spec(spec), graph, f, basis)
        hits = [run_walk(kernel, 10000, trial_seed(2018, k, 0, t), stop_on_hit=True).hitting_time_or_cap()
                for t in range(5)]
        print(f"   • {spec:<12} {hits}")

    print("\n" + "=" * 50)
    print("🚀 Для полного функционала используйте:")
    print("   python -m graph_ascent.cli --help")
    print("=" * 50)


def main():
    """Основная функция"""
    try:
        demo_walks()
    except KeyboardInterrupt:
        print("\n⏹️ Прервано пользователем")
    except Exception as e:
        print(f"❌ Ошибка: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
