import sys
from pathlib import Path
from typing import Dict, Any

import numpy as np
import pytest

# В тестах явно добавляем путь к src, чтобы импортировать пакет
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from graph_ascent.config import Config  # noqa: E402
from graph_ascent.components.graph_core import Graph, grid_graph  # noqa: E402
from graph_ascent.components.spectral import GraphFunction, spectral_basis  # noqa: E402


@pytest.fixture(scope="session")
def test_config() -> Dict[str, Any]:
    """Возвращает раздел `testing` из config.yaml."""
    cfg = Config()
    return cfg.get("testing", {}) or {}


@pytest.fixture
def temp_directory(tmp_path: Path) -> Path:
    """Временная директория для тестов.

    Возвращает уникальную директорию для каждого теста.
    """
    return tmp_path


@pytest.fixture(scope="session")
def path3() -> Graph:
    """Путь на трёх вершинах 0-1-2."""
    return grid_graph(1, 3)


@pytest.fixture(scope="session")
def k2() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], family="complete")


@pytest.fixture(scope="session")
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture(scope="session")
def increasing_path3() -> GraphFunction:
    """f = (1, 2, 3) на пути из трёх вершин."""
    return GraphFunction(values=np.array([1.0, 2.0, 3.0]))


@pytest.fixture(scope="session")
def grid4_basis():
    return spectral_basis(grid_graph(4, 4))


@pytest.fixture(scope="session")
def small_instances():
    """30 случайных экземпляров n ≤ 32 для проверок инвариантов."""
    from .fixtures.instances import random_instances

    return random_instances(30, seed=11)


def pytest_configure(config):
    """Регистрируем маркеры для проекта."""
    config.addinivalue_line("markers", "integration: интеграционные тесты")
    config.addinivalue_line("markers", "performance: тесты производительности")
    config.addinivalue_line("markers", "quality: статистические проверки")
    config.addinivalue_line("markers", "e2e: сквозные тесты")
    config.addinivalue_line("markers", "full_scale: полномасштабное воспроизведение серии замеров")
