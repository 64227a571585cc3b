"""
Тесты оценок и точных оракулов.
"""

import math

import numpy as np
import pytest

from graph_ascent.components.analysis import (
    BoundInputs,
    HittingSystemError,
    OracleSizeError,
    dense_kernel,
    dominance_M,
    envelope_slack,
    exact_expected_hitting,
    exact_tv_curve,
    highprob_hitting_bound,
    hitting_bound_exponential,
    hitting_bound_laplacian,
    stationary_distribution,
    theta_exponential,
    theta_laplacian,
    tv_bound_exponential,
    tv_bound_laplacian,
    tv_distance,
)
from graph_ascent.components.graph_core import grid_graph
from graph_ascent.components.spectral import GraphFunction, coherence_profile, spectral_basis
from graph_ascent.components.walkers import ExponentialKernel, LaplacianKernel, VanillaKernel

from .fixtures.instances import random_instances


def manual_inputs(**overrides):
    params = dict(r=2, d_max=2, delta_f=0.2, Delta_f=0.5, gamma=1.0, f_max=3.0, f_min=1.0,
                  M=1.0, norm_sq=14.0, n=3)
    params.update(overrides)
    return BoundInputs(**params)


class TestDominanceM:
    def test_exact(self):
        assert dominance_M(3, 100, 0.0) == 3.0

    def test_approximate(self):
        assert dominance_M(10, 1024, 0.01) == pytest.approx(16.5024, rel=1e-12)

    @pytest.mark.parametrize("args", [(0, 10, 0.0), (1, 0, 0.0), (2, 10, -0.1)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            dominance_M(*args)


class TestBoundInputs:
    def test_exponential_path3(self, path3, increasing_path3):
        inp = BoundInputs.for_exponential(path3, increasing_path3, 1.0)
        assert inp.r == 2
        assert inp.d_max == 2
        assert inp.M == 1.0
        assert inp.f_max - inp.f_min == 2.0

    def test_laplacian_k2(self, k2):
        inp = BoundInputs.for_laplacian(k2, GraphFunction(values=np.array([1.0, 2.0])), 2)
        assert inp.M == 2.0
        assert inp.norm_sq == pytest.approx(5.0)
        assert (inp.delta_f, inp.Delta_f) == pytest.approx((0.2, 0.8))

    @pytest.mark.parametrize("overrides", [
        {"r": 0},
        {"delta_f": 0.6},
        {"delta_f": 0.0},
        {"Delta_f": 1.0, "delta_f": 0.5},
        {"M": 1.0, "k": 2},
    ])
    def test_validation(self, overrides):
        with pytest.raises(ValueError):
            manual_inputs(**overrides)


class TestTheta:
    def test_exponential_gamma_zero_path3(self, path3, increasing_path3):
        inp = BoundInputs.for_exponential(path3, increasing_path3, 0.0)
        assert theta_exponential(inp) == pytest.approx(0.25, rel=1e-12)

    def test_laplacian_k2(self, k2):
        inp = BoundInputs.for_laplacian(k2, GraphFunction(values=np.array([1.0, 2.0])), 2)
        assert theta_laplacian(inp) == pytest.approx(0.5)

    def test_in_unit_interval(self, small_instances):
        for inst in small_instances:
            for inp in (BoundInputs.for_exponential(inst.graph, inst.function, 0.7),
                        BoundInputs.for_laplacian(inst.graph, inst.function, inst.k)):
                for theta in (theta_exponential(inp), theta_laplacian(inp)):
                    assert 0.0 <= theta <= 1.0

    def test_tv_bound_floor(self):
        inp = manual_inputs(r=2)
        theta = theta_exponential(inp)
        assert tv_bound_exponential(inp, 0) == 1.0
        assert tv_bound_exponential(inp, 1) == 1.0
        assert tv_bound_exponential(inp, 3) == pytest.approx(theta)
        assert tv_bound_exponential(inp, 4) == pytest.approx(theta ** 2)
        assert tv_bound_laplacian(inp, 5) == pytest.approx(theta_laplacian(inp) ** 2)

    def test_tv_bound_negative_t(self):
        with pytest.raises(ValueError):
            tv_bound_laplacian(manual_inputs(), -1)


class TestHittingBounds:
    def test_exponential_path3(self, path3, increasing_path3):
        inp = BoundInputs.for_exponential(path3, increasing_path3, 1.0)
        assert hitting_bound_exponential(inp) == pytest.approx(4 * math.e ** 2, rel=1e-12)

    def test_laplacian_k2(self, k2):
        inp = BoundInputs.for_laplacian(k2, GraphFunction(values=np.array([1.0, 2.0])), 2)
        assert hitting_bound_laplacian(inp) == pytest.approx(2.5)

    def test_overflow_is_inf(self):
        assert hitting_bound_exponential(manual_inputs(gamma=1e4)) == math.inf
        assert hitting_bound_laplacian(manual_inputs(r=400, f_min=1e-3, delta_f=0.01)) == math.inf

    def test_laplacian_requires_positive_minimum(self):
        with pytest.raises(ValueError):
            hitting_bound_laplacian(manual_inputs(f_min=0.0))

    def test_highprob(self):
        assert highprob_hitting_bound(10.0, 20.0, 100.0) == pytest.approx(0.5 ** 5)
        assert highprob_hitting_bound(10.0, 20.0, 19.0) == 1.0
        assert highprob_hitting_bound(30.0, 20.0, 100.0) == 1.0
        with pytest.raises(ValueError):
            highprob_hitting_bound(10.0, 0.0, 5.0)


class TestOracles:
    def test_dense_kernel_stochastic(self, small_instances):
        inst = small_instances[2]
        P = dense_kernel(ExponentialKernel(inst.graph, inst.function, 1.0))
        assert P.shape == (inst.graph.n, inst.graph.n)
        assert P.sum(axis=1) == pytest.approx(np.ones(inst.graph.n), abs=1e-12)
        assert np.all(P >= 0)

    def test_dense_kernel_size_cap(self):
        g = grid_graph(5, 5)
        with pytest.raises(OracleSizeError):
            dense_kernel(VanillaKernel(g), max_nodes=24)

    def test_stationary_matches_target(self, small_instances):
        for inst in small_instances[:10]:
            coh = coherence_profile(inst.basis, inst.k)
            for kernel in (ExponentialKernel(inst.graph, inst.function, 0.5),
                           LaplacianKernel(inst.graph, inst.function, coh)):
                pi = stationary_distribution(dense_kernel(kernel))
                assert pi == pytest.approx(kernel.stationary(), abs=1e-8)

    def test_stationary_vanilla_degrees(self, path3):
        pi = stationary_distribution(dense_kernel(VanillaKernel(path3)))
        assert pi == pytest.approx([0.25, 0.5, 0.25])

    def test_tv_distance(self):
        assert tv_distance([1.0, 0.0], [0.5, 0.5]) == pytest.approx(0.5)
        assert tv_distance([0.2, 0.8], [0.2, 0.8]) == 0.0

    def test_tv_curve_start_and_monotone(self, small_instances):
        inst = small_instances[4]
        kernel = ExponentialKernel(inst.graph, inst.function, 1.0)
        p = kernel.stationary()
        curve = exact_tv_curve(dense_kernel(kernel), p, t_max=60)
        assert curve[0] == pytest.approx(1.0 - p.min())
        assert np.all(np.diff(curve) <= 1e-12)

    def test_tv_curve_k2_laplacian(self, k2):
        f = GraphFunction(values=np.array([1.0, 2.0]))
        kernel = LaplacianKernel(k2, f, coherence_profile(spectral_basis(k2), 2))
        curve = exact_tv_curve(dense_kernel(kernel), kernel.stationary(), t_max=2)
        assert curve[1] == pytest.approx(0.2)

    def test_hitting_path3_exponential(self, path3, increasing_path3):
        P = dense_kernel(ExponentialKernel(path3, increasing_path3, 1.0))
        h = exact_expected_hitting(P, [2])
        expected_1 = (1 + math.exp(-1)) / 0.5
        assert h.per_start == pytest.approx([1 + expected_1, expected_1, 0.0], rel=1e-12)
        assert h.per_start[0] == pytest.approx(3.7358, abs=1e-4)
        assert h.worst == pytest.approx(h.per_start[0])
        assert h.uniform == pytest.approx(h.per_start.mean())

    def test_hitting_k2_laplacian(self, k2):
        f = GraphFunction(values=np.array([1.0, 2.0]))
        kernel = LaplacianKernel(k2, f, coherence_profile(spectral_basis(k2), 2))
        h = exact_expected_hitting(dense_kernel(kernel), f.argmax_set())
        assert h.per_start == pytest.approx([1.0, 0.0])

    def test_hitting_all_targets(self):
        h = exact_expected_hitting(np.array([[0.0, 1.0], [1.0, 0.0]]), [0, 1])
        assert h.worst == 0.0

    def test_hitting_unreachable(self):
        with pytest.raises(HittingSystemError):
            exact_expected_hitting(np.eye(3), [2])

    @pytest.mark.parametrize("target", [[], [5]])
    def test_hitting_invalid_target(self, target):
        with pytest.raises(ValueError):
            exact_expected_hitting(np.full((2, 2), 0.5), target)

    def test_envelope_slack_nonnegative(self):
        for inst in random_instances(20, seed=5):
            kernel = LaplacianKernel(inst.graph, inst.function, coherence_profile(inst.basis, inst.k))
            assert envelope_slack(kernel, float(inst.k)) >= -1e-12
