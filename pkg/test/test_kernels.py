import logging

import numpy as np
import pytest

from qcausal.configuration import Configuration
from qcausal.core.kernelmatrix import KernelMatrix
from qcausal.exceptions import DegenerateDataError, InputDataError
from qcausal.kernels.family import FidelityFamily, GaussianFamily, family_of
from qcausal.kernels.gaussian import (GaussianKernelParams, center,
                                      gaussian_kernel_matrix,
                                      median_heuristic_width, product_kernel)


def test_gaussian_kernel_entries():
    x = np.array([[0.0], [1.0], [3.0]])
    K = gaussian_kernel_matrix(x, GaussianKernelParams(2.0)).values
    assert np.all(np.diag(K) == 1.0), 'the diagonal must be exactly 1'
    assert np.allclose(K, K.T)
    assert K[0, 2] == pytest.approx(np.exp(-9.0 / 8.0)), f'got {K[0, 2]}'


@pytest.mark.parametrize('points, expected', [
    # squared distances 1, 9, 4 -> lower median 4
    ([0.0, 1.0, 3.0], np.sqrt(2.0)),
    # six pairs 0, 0, 0, 1, 1, 1 -> lower median is 0, fall back to the nonzero ones
    ([0.0, 0.0, 0.0, 1.0], np.sqrt(0.5)),
    ([0.0, 2.0], np.sqrt(2.0)),
])
def test_median_heuristic(points, expected):
    width = median_heuristic_width(np.array(points)).width
    assert width == pytest.approx(expected), f'median width of {points} should be {expected}, got {width}'


def test_median_heuristic_identical_points():
    with pytest.raises(DegenerateDataError):
        median_heuristic_width(np.ones((5, 2)))


@pytest.mark.parametrize('width', [0.0, -1.0, np.inf, np.nan])
def test_invalid_width(width):
    with pytest.raises(InputDataError):
        GaussianKernelParams(width)


def test_center_removes_means():
    rng = np.random.default_rng(3)
    K = gaussian_kernel_matrix(rng.standard_normal((12, 2)), 1.0)
    Kc = center(K)
    assert Kc.centered
    assert np.allclose(Kc.values.sum(axis=0), 0.0, atol=1e-12)
    assert np.allclose(Kc.values.sum(axis=1), 0.0, atol=1e-12)
    assert np.allclose(center(Kc).values, Kc.values, atol=1e-12), 'centering must be idempotent'


def test_product_kernel_takes_uncentered_kernels():
    rng = np.random.default_rng(0)
    Ka = gaussian_kernel_matrix(rng.standard_normal(8), 1.0)
    Kb = gaussian_kernel_matrix(rng.standard_normal(8), 1.0)
    assert np.allclose(product_kernel(Ka, Kb).values, Ka.values * Kb.values)
    with pytest.raises(InputDataError):
        product_kernel(center(Ka), Kb)


def test_gaussian_family_median_and_scaling():
    rng = np.random.default_rng(1)
    block = rng.standard_normal((20, 2))
    width = median_heuristic_width(block)
    expected = gaussian_kernel_matrix(0.5 * block, width).values
    got = GaussianFamily(scaling=0.5).kernel(block, [0, 1]).values
    assert np.allclose(got, expected)


def test_gaussian_family_widths_give_product_kernel():
    rng = np.random.default_rng(2)
    block = rng.standard_normal((15, 2))
    family = GaussianFamily({0: 0.7, 1: 1.9})
    K = family.kernel(block, [0, 1]).values
    K0 = gaussian_kernel_matrix(block[:, 0], 0.7).values
    K1 = gaussian_kernel_matrix(block[:, 1], 1.9).values
    assert np.allclose(K, K0 * K1)
    with pytest.raises(InputDataError):
        family.kernel(block, [0, 2])


def test_fidelity_family_caps_qubits():
    family = FidelityFamily()
    assert family.spec(3).n_qubits == 3
    assert family.spec(20).n_qubits == 8
    assert family.with_scaling(0.3).spec(2).scaling == 0.3


def test_fidelity_family_kernel_is_valid():
    rng = np.random.default_rng(4)
    K = FidelityFamily({'depth': 2}).kernel(rng.standard_normal((10, 2)), [0, 1])
    assert isinstance(K, KernelMatrix) and not K.centered
    assert np.all(np.diag(K.values) == 1.0)
    assert K.is_psd()


def test_family_of():
    assert isinstance(family_of('gaussian'), GaussianFamily)
    assert isinstance(family_of('quantum', scaling=0.2), FidelityFamily)
    with pytest.raises(InputDataError):
        family_of('laplace')


def test_gaussian_kernel_at_sqrt_two():
    K = gaussian_kernel_matrix(np.array([0.0, np.sqrt(2.0)]), GaussianKernelParams(1.0)).values
    assert K[0, 1] == pytest.approx(np.exp(-1.0), rel=1e-12)


def test_gaussian_kernel_wide_limit():
    data = np.random.default_rng(5).uniform(0.0, 1.0, size=(30, 3))
    K = gaussian_kernel_matrix(data, GaussianKernelParams(1e6)).values
    assert K.min() >= 1.0 - 1e-10


def test_gaussian_kernel_translation_invariance():
    rng = np.random.default_rng(6)
    data = rng.standard_normal((25, 2))
    K = gaussian_kernel_matrix(data, 0.9).values
    shifted = gaussian_kernel_matrix(data + np.array([3.7, -1.2]), 0.9).values
    assert np.max(np.abs(K - shifted)) <= 1e-12


def test_product_of_gaussians_adds_inverse_widths():
    x = np.random.default_rng(7).standard_normal(20)
    s1, s2 = 0.8, 1.5
    K = product_kernel(gaussian_kernel_matrix(x, s1), gaussian_kernel_matrix(x, s2)).values
    joint = 1.0 / np.sqrt(1.0 / s1 ** 2 + 1.0 / s2 ** 2)
    assert np.allclose(K, gaussian_kernel_matrix(x, joint).values, rtol=0.0, atol=1e-12)
    assert np.linalg.eigvalsh(K)[0] >= -1e-8


def test_center_examples():
    assert np.allclose(center(KernelMatrix(np.ones((2, 2)))).values, 0.0)
    assert np.allclose(center(KernelMatrix(np.eye(2))).values, [[0.5, -0.5], [-0.5, 0.5]])


@pytest.mark.parametrize('seed', range(100))
def test_kernel_invariants_on_random_data(seed):
    rng = np.random.default_rng(seed)
    n, d = int(rng.integers(2, 51)), int(rng.integers(1, 4))
    block = rng.normal(0.0, rng.uniform(0.2, 3.0), size=(n, d))
    scaling = float(rng.uniform(0.1, 2.0))
    for family in (GaussianFamily(scaling=scaling), FidelityFamily({'depth': 2}, scaling=scaling)):
        K = family.kernel(block, list(range(d)))
        values = K.values
        assert np.max(np.abs(values - values.T)) <= 1e-12, f'{family}: not symmetric'
        assert np.max(np.abs(np.diag(values) - 1.0)) <= 1e-12, f'{family}: diagonal is not 1'
        eigs = K.eigvalsh()
        assert eigs[0] >= -1e-8 * eigs[-1], f'{family}: not PSD ({eigs[0]})'
        Kc = center(K).values
        assert np.max(np.abs(Kc.sum(axis=0))) <= 1e-8
        assert np.max(np.abs(Kc.sum(axis=1))) <= 1e-8


def test_fidelity_family_warns_when_features_exceed_qubits(monkeypatch, caplog):
    monkeypatch.setattr(Configuration, '_max_qubits', 2)
    block = np.random.default_rng(8).standard_normal((6, 3))
    with caplog.at_level(logging.WARNING, logger='qcausal.kernels.family'):
        K = FidelityFamily({'depth': 1}).kernel(block, [0, 1, 2])
    assert K.n == 6
    assert 'features 2 to 2 are not embedded' in caplog.text
    caplog.clear()
    with caplog.at_level(logging.WARNING, logger='qcausal.kernels.family'):
        FidelityFamily({'depth': 1}).kernel(block[:, :2], [0, 1])
    assert not caplog.records
