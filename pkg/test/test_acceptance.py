"""
Monte-Carlo runs of the whole pipeline. Each takes from seconds to minutes;
run them with `pytest test/test_acceptance.py --workers auto`
"""
import numpy as np
import pytest

from qcausal.datagen.junctions import COLLIDER, FORK, INDEPENDENT, gen_junction
from qcausal.evaluation.benchmark import (PC_GAUSSIAN, QPC_DEFAULT, QPC_OPTIMIZED,
                                          GeneratorConfig, accuracy_cell, roc_sweep)
from qcausal.evaluation.cpdag import markov_accuracy
from qcausal.kcit.independence import uncond_test
from qcausal.kernels.family import FidelityFamily
from qcausal.kernels.gaussian import center, gaussian_kernel_matrix, median_heuristic_width
from qcausal.kta.optimizer import OptimizerConfig, optimize_scaling
from qcausal.pc.run import PCConfig, run_pc


def _centered(x):
    return center(gaussian_kernel_matrix(x, median_heuristic_width(x)))


def test_null_calibration():
    p_values = []
    for seed in range(500):
        rng = np.random.default_rng(seed)
        x, y = rng.standard_normal(100), rng.standard_normal(100)
        p_values.append(uncond_test(_centered(x), _centered(y), 0.05).p_value)
    p_values = np.array(p_values)
    rate_05 = np.mean(p_values <= 0.05)
    rate_01 = np.mean(p_values <= 0.01)
    assert 0.02 <= rate_05 <= 0.09, f'type-I rate at 0.05: {rate_05}'
    assert 0.002 <= rate_01 <= 0.03, f'type-I rate at 0.01: {rate_01}'


def test_roc_fpr_grows_with_alpha():
    curve = roc_sweep(GeneratorConfig(INDEPENDENT, 100), PC_GAUSSIAN, trials=30, seed=0)
    points = sorted(curve.points, key=lambda point: point.alpha)
    fprs = [point.fpr for point in points]
    assert all(point.trials == 30 for point in points), curve.failures
    assert all(a <= b for a, b in zip(fprs, fprs[1:])), f'FPR by alpha: {fprs}'
    assert points[-1].alpha == 0.999999 and points[-1].fpr >= 0.9
    assert points[0].alpha == 0.00001 and points[0].fpr <= 0.05


@pytest.mark.parametrize('seed', range(20))
def test_scaling_search_never_loses_alignment(seed):
    rng = np.random.default_rng(seed)
    data = rng.standard_normal((40, 3))
    result = optimize_scaling(data, FidelityFamily({'depth': 2}), OptimizerConfig(seed=seed))
    assert result.kta_final <= result.kta_initial + 1e-12
    assert 0.01 <= result.params <= 0.5


def test_optimization_reduces_false_positives():
    generator = GeneratorConfig(INDEPENDENT, 50)
    default = roc_sweep(generator, QPC_DEFAULT, [0.05], trials=50, seed=11)
    optimized = roc_sweep(generator, QPC_OPTIMIZED, [0.05], trials=50, seed=11)
    assert default.points[0].trials == optimized.points[0].trials == 50
    assert optimized.points[0].fpr <= default.points[0].fpr, \
        f'optimized FPR {optimized.points[0].fpr} > default FPR {default.points[0].fpr}'


def test_collider_accuracy_grows_with_n():
    accuracy = [accuracy_cell(GeneratorConfig(COLLIDER, n), PC_GAUSSIAN, 0.05, trials=10, seed=5)['accuracy']
                for n in (50, 200, 800)]
    assert accuracy[0] <= accuracy[1] <= accuracy[2], f'accuracy by n: {accuracy}'
    assert accuracy[2] >= 0.7


def test_fork_recovered_at_large_n():
    hits = 0
    for seed in range(10):
        data, truth = gen_junction(FORK, 1000, seed=seed)
        cpdag, _, _ = run_pc(data, PCConfig(seed=seed))
        hits += markov_accuracy(cpdag, truth.to_graph())
    assert hits >= 8, f'{hits}/10 recovered'


def test_near_complete_graph_at_extreme_alpha():
    data, _ = gen_junction(INDEPENDENT, 60, seed=1)
    cpdag, _, _ = run_pc(data, PCConfig(alpha=0.999999))
    assert cpdag.n_edges() >= 2
