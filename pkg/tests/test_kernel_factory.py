"""
Тесты фабрики ядер и краткой записи блужданий.
"""

import pytest

from graph_ascent.components.kernel_factory import KernelFactory, default_walker_set
from graph_ascent.components.spectral import synth_smooth
from graph_ascent.components.walkers import ExponentialKernel, LaplacianKernel, VanillaKernel


@pytest.fixture
def smooth4(grid4_basis):
    return synth_smooth(grid4_basis, 3, seed=1)


@pytest.mark.parametrize("text,expected", [
    ("vanilla", {"type": "vanilla"}),
    ("exp:1", {"type": "exponential", "gamma": 1.0}),
    ("exponential:0.5", {"type": "exponential", "gamma": 0.5}),
    ("exp", {"type": "exponential", "gamma": 1.0}),
    ("laplacian", {"type": "laplacian", "k": None}),
    ("laplacian:5", {"type": "laplacian", "k": 5}),
    ("laplacian_eps:5:0.01", {"type": "laplacian_eps", "k": 5, "eps": 0.01}),
])
def test_parse_spec(text, expected):
    assert KernelFactory.parse_spec(text) == expected


@pytest.mark.parametrize("text", ["metropolis", "laplacian_eps:5"])
def test_parse_spec_invalid(text):
    with pytest.raises(ValueError):
        KernelFactory.parse_spec(text)


def test_create_each_type(grid4_basis, smooth4):
    g = grid4_basis.graph
    assert isinstance(KernelFactory.create({"type": "vanilla"}, g, smooth4), VanillaKernel)
    exp = KernelFactory.create({"type": "exponential", "gamma": 2.0}, g, smooth4)
    assert isinstance(exp, ExponentialKernel) and exp.gamma == 2.0
    lap = KernelFactory.create({"type": "laplacian"}, g, smooth4, grid4_basis)
    assert isinstance(lap, LaplacianKernel)
    assert lap.coherence.k == 3
    assert lap.describe() == {"algorithm": "laplacian", "param": "k=3"}
    eps = KernelFactory.create({"type": "laplacian_eps", "k": 4, "eps": 0.1}, g, smooth4, grid4_basis)
    assert eps.describe() == {"algorithm": "laplacian_eps", "param": "k=4;eps=0.1"}


def test_create_unknown_returns_none(grid4_basis, smooth4):
    assert KernelFactory.create({"type": "mystery"}, grid4_basis.graph, smooth4) is None
    assert KernelFactory.create({}, grid4_basis.graph, smooth4) is None


def test_create_or_fail(grid4_basis, smooth4):
    with pytest.raises(ValueError, match="mystery"):
        KernelFactory.create_or_fail({"type": "mystery"}, grid4_basis.graph, smooth4)


def test_laplacian_requires_basis(grid4_basis, smooth4):
    with pytest.raises(ValueError):
        KernelFactory.create({"type": "laplacian"}, grid4_basis.graph, smooth4)


def test_default_walker_set():
    walkers = default_walker_set([0.0, 1.0])
    assert [w["type"] for w in walkers] == ["vanilla", "exponential", "exponential", "laplacian"]
    assert [w["type"] for w in default_walker_set([], include_eps=True)] == ["vanilla", "laplacian", "laplacian_eps"]
