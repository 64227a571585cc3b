"""
Тесты для компонента graph_core.
"""

import numpy as np
import pytest

from graph_ascent.components.graph_core import (
    DisconnectedGraphError,
    Graph,
    GraphFormatError,
    GraphGenerationError,
    barabasi_albert,
    diameter,
    er_default_p,
    erdos_renyi,
    grid_graph,
    load_graph,
    save_graph,
)

from .conftest import complete_graph
from .fixtures.instances import random_instances


def floyd_warshall(g: Graph) -> np.ndarray:
    """Наивный оракул кратчайших путей."""
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for u, v in g.edges():
        dist[u, v] = dist[v, u] = 1.0
    for m in range(g.n):
        dist = np.minimum(dist, dist[:, [m]] + dist[[m], :])
    return dist


class TestGrid:
    """Решётки."""

    def test_bench_grid_size(self):
        g = grid_graph(32, 32)
        assert g.n == 1024
        assert g.edge_count == 1984
        assert g.diameter == 62

    def test_path(self):
        g = grid_graph(1, 3)
        assert g.degrees.tolist() == [1, 2, 1]
        assert diameter(g) == 2
        assert g.neighbors(1) == (0, 2)

    def test_four_cycle(self):
        g = grid_graph(2, 2)
        assert g.degrees.tolist() == [2, 2, 2, 2]
        assert g.d_max == 2

    def test_indexing(self):
        g = grid_graph(3, 4)
        # (1, 2) → 1·4 + 2 = 6; соседи (0,2)=2, (2,2)=10, (1,1)=5, (1,3)=7
        assert set(g.neighbors(6)) == {2, 5, 7, 10}

    @pytest.mark.parametrize("rows,cols", [(0, 5), (3, 0), (1, 1)])
    def test_invalid_dimensions(self, rows, cols):
        with pytest.raises(ValueError):
            grid_graph(rows, cols)


class TestErdosRenyi:
    """Графы Эрдёша–Реньи."""

    def test_default_p_natural_log(self):
        assert er_default_p(1000) == pytest.approx(1.1 * np.log(1000) / 1000)
        assert er_default_p(1000) == pytest.approx(0.007598, abs=1e-5)

    def test_complete_when_p_is_one(self):
        g = erdos_renyi(5, 1.0, seed=3)
        assert g.degrees.tolist() == [4] * 5

    def test_deterministic(self):
        a = erdos_renyi(4, 0.5, seed=7)
        b = erdos_renyi(4, 0.5, seed=7)
        assert a.edges() == b.edges()
        assert a.is_connected()

    def test_bench_size_er_is_connected(self):
        g = erdos_renyi(1000, er_default_p(1000), seed=1)
        assert g.n == 1000
        assert g.is_connected()

    def test_generation_failure(self):
        with pytest.raises(GraphGenerationError):
            erdos_renyi(50, 0.001, seed=0, max_attempts=5)

    @pytest.mark.parametrize("p", [0.0, -0.1, 1.5])
    def test_invalid_p(self, p):
        with pytest.raises(ValueError):
            erdos_renyi(10, p, seed=0)


class TestBarabasiAlbert:
    """Графы Барабаши–Альберт."""

    def test_bench_size_ba_edge_count(self):
        g = barabasi_albert(1000, 3, seed=5)
        assert g.edge_count == 2994
        assert g.is_connected()

    def test_forced_complete(self):
        g = barabasi_albert(4, 3, seed=0)
        assert g == complete_graph(4)

    def test_tree_for_m_one(self):
        g = barabasi_albert(5, 1, seed=1)
        assert g.edge_count == 4
        assert g.is_connected()

    @pytest.mark.parametrize("n,m", [(30, 2), (50, 3), (40, 4)])
    def test_total_degree(self, n, m):
        g = barabasi_albert(n, m, seed=9)
        assert int(g.degrees.sum()) == 2 * (m * (m - 1) // 2 + m * (n - m))

    def test_deterministic(self):
        assert barabasi_albert(60, 3, seed=4).edges() == barabasi_albert(60, 3, seed=4).edges()

    def test_n_not_above_m(self):
        with pytest.raises(ValueError):
            barabasi_albert(3, 3, seed=0)


class TestGraphInvariants:
    """Симметрия, отсутствие петель, связность."""

    def test_generated_graphs(self):
        for inst in random_instances(15, seed=2):
            g = inst.graph
            for i in range(g.n):
                assert i not in g.neighbors(i)
                for j in g.neighbors(i):
                    assert g.has_edge(j, i)
            assert g.is_connected()
            assert g.d_max == int(g.degrees.max())

    def test_diameter_matches_floyd_warshall(self):
        for inst in random_instances(12, seed=3, n_max=64):
            assert diameter(inst.graph) == int(floyd_warshall(inst.graph).max())

    def test_complete_graph_diameter(self):
        assert diameter(complete_graph(5)) == 1

    def test_rejects_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            Graph.from_edges(4, [(0, 1), (2, 3)])

    def test_rejects_asymmetric(self):
        with pytest.raises(GraphFormatError):
            Graph(n=2, adjacency=((1,), ()))

    def test_from_adjacency_matrix(self, path3):
        W = path3.adjacency_matrix()
        assert Graph.from_adjacency_matrix(W) == path3


class TestEdgeListFormat:
    """Загрузка и сохранение списка рёбер."""

    def test_load_path(self, path3):
        assert load_graph("0 1\n1 2") == path3

    def test_round_trip(self):
        g = grid_graph(2, 2)
        assert load_graph(save_graph(g)) == g
        for inst in random_instances(6, seed=4):
            assert load_graph(save_graph(inst.graph)) == inst.graph

    def test_either_orientation(self, path3):
        assert load_graph("1 0\n2 1\n") == path3

    @pytest.mark.parametrize("text", [
        "0 0",
        "0 1\n1 0",
        "0 1 2",
        "0 x",
        "-1 0",
        "",
    ])
    def test_rejects_malformed(self, text):
        with pytest.raises(GraphFormatError):
            load_graph(text)

    def test_index_beyond_n(self):
        with pytest.raises(GraphFormatError):
            load_graph("0 1\n1 5", n=4)

    def test_disconnected_file(self):
        with pytest.raises(DisconnectedGraphError):
            load_graph("0 1\n2 3")
