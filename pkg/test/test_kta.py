import numpy as np
import pytest

from qcausal.core.kernelmatrix import KernelMatrix
from qcausal.exceptions import InputDataError, SizeError, UnsupportedKernelError
from qcausal.kcit.independence import uncond_test
from qcausal.kernels.family import FidelityFamily, GaussianFamily
from qcausal.kernels.gaussian import center, gaussian_kernel_matrix, median_heuristic_width
from qcausal.kta.alignment import kta, mean_pairwise_kta
from qcausal.kta.decouple import (decouple, moment_resample, resolve_mode,
                                  shuffle_decouple)
from qcausal.kta.gradient import kta_gradient, kta_loss_and_gradient
from qcausal.kta.optimizer import (METHOD_GRADIENT, OptimizerConfig,
                                   minimize_kta_gradient, minimize_kta_scalar,
                                   optimize_scaling, write_trace_csv)


def _random_psd(rng, n):
    A = rng.standard_normal((n, int(rng.integers(1, n + 1))))
    return KernelMatrix(A @ A.T)


@pytest.mark.parametrize('seed', range(200))
def test_kta_bounds(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 30))
    Kx, Ky = center(_random_psd(rng, n)), center(_random_psd(rng, n))
    value = kta(Kx, Ky).value
    assert 0.0 <= value <= 1.0, f'KTA out of range: {value}'
    assert abs(kta(Kx, Kx).value - 1.0) <= 1e-12


def test_kta_loss():
    rng = np.random.default_rng(0)
    K = center(_random_psd(rng, 10))
    assert kta(K, K).loss == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(InputDataError):
        kta(_random_psd(rng, 10), K)


def _numeric_gradient(f, w, step=1e-5):
    grad = np.zeros_like(w)
    for c in range(len(w)):
        up, down = w.copy(), w.copy()
        up[c] += step
        down[c] -= step
        grad[c] = (f(up) - f(down)) / (2 * step)
    return grad


@pytest.mark.parametrize('seed', range(20))
def test_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    n = 30
    x = rng.standard_normal((n, 2))
    y = np.column_stack([x[:, 0] ** 2, rng.standard_normal(n)]) + 0.3 * rng.standard_normal((n, 2))
    wx = rng.uniform(0.5, 2.0, size=2)
    wy = rng.uniform(0.5, 2.0, size=2)
    scaling = float(rng.uniform(0.5, 1.5))
    _, gx, gy = kta_loss_and_gradient(x, y, wx, wy, scaling)

    def loss_x(w):
        return kta_loss_and_gradient(x, y, w, wy, scaling)[0]

    def loss_y(w):
        return kta_loss_and_gradient(x, y, wx, w, scaling)[0]

    np.testing.assert_allclose(gx, _numeric_gradient(loss_x, wx), rtol=1e-4, atol=1e-8)
    np.testing.assert_allclose(gy, _numeric_gradient(loss_y, wy), rtol=1e-4, atol=1e-8)


def test_loss_is_minus_log_kta():
    rng = np.random.default_rng(3)
    x, y = rng.standard_normal((25, 1)), rng.standard_normal((25, 1))
    loss, _, _ = kta_loss_and_gradient(x, y, [0.8], [1.2])
    Kx = center(gaussian_kernel_matrix(x, 0.8))
    Ky = center(gaussian_kernel_matrix(y, 1.2))
    assert loss == pytest.approx(kta(Kx, Ky).loss)


def test_kta_gradient_needs_gaussian_widths():
    rng = np.random.default_rng(4)
    x, y = rng.standard_normal((20, 1)), rng.standard_normal((20, 1))
    gx, gy = kta_gradient(x, y, GaussianFamily({0: 1.0}), GaussianFamily({0: 0.5}))
    assert gx.shape == (1,) and gy.shape == (1,)
    with pytest.raises(UnsupportedKernelError):
        kta_gradient(x, y, GaussianFamily(), GaussianFamily({0: 0.5}))
    with pytest.raises(UnsupportedKernelError):
        kta_gradient(x, y, FidelityFamily(), GaussianFamily({0: 0.5}))


def test_scalar_search_on_quadratic():
    gamma, value, trace = minimize_kta_scalar(lambda g: (g - 0.2) ** 2 + 0.1, (0.01, 0.5), 0.1)
    assert gamma == pytest.approx(0.2, abs=1e-3)
    assert value == pytest.approx(0.1, abs=1e-6)
    assert trace[0][1] == 0.1, 'the initial point is evaluated first'
    assert [row[0] for row in trace] == list(range(len(trace)))


def test_scalar_search_keeps_best_bound():
    gamma, value, _ = minimize_kta_scalar(lambda g: 1.0 - g, (0.01, 0.5), 0.1)
    assert gamma == pytest.approx(0.5, abs=1e-3)
    assert value <= 1.0 - 0.1


def test_scalar_search_bounds():
    with pytest.raises(InputDataError):
        minimize_kta_scalar(lambda g: g, (0.5, 0.5), 0.5)


@pytest.mark.parametrize('family', [GaussianFamily(), FidelityFamily({'depth': 1})])
def test_optimize_scaling_never_worse_than_init(family):
    rng = np.random.default_rng(5)
    x = rng.standard_normal(40)
    data = np.column_stack([x, x ** 2 + 0.1 * rng.standard_normal(40)])
    config = OptimizerConfig(seed=1)
    result = optimize_scaling(data, family, config)
    assert config.bounds[0] <= result.params <= config.bounds[1]
    assert result.kta_final <= result.kta_initial + 1e-12
    assert result.trace[0][1] == config.init


def test_shuffle_decouple_keeps_marginals():
    rng = np.random.default_rng(6)
    data = rng.standard_normal((30, 3))
    out = shuffle_decouple(data, 2)
    assert np.array_equal(out[:, 0], data[:, 0]), 'the first column stays in place'
    for c in range(3):
        assert np.array_equal(np.sort(out[:, c]), np.sort(data[:, c]))
    assert np.array_equal(shuffle_decouple(data, 2), out)


def test_moment_resample():
    rng = np.random.default_rng(7)
    data = np.column_stack([rng.normal(3.0, 2.0, 500), rng.normal(-1.0, 0.5, 500)])
    out = moment_resample(data, 4000, 0)
    assert out.shape == (4000, 2)
    assert np.allclose(out.mean(axis=0), data.mean(axis=0), atol=0.1)
    assert np.allclose(out.std(axis=0), data.std(axis=0, ddof=1), rtol=0.05)


def test_decouple_modes():
    assert resolve_mode('auto', 500) == 'shuffle'
    assert resolve_mode('auto', 501) == 'resample'
    assert resolve_mode('resample', 10) == 'resample'
    with pytest.raises(InputDataError):
        resolve_mode('bootstrap', 10)
    with pytest.raises(SizeError):
        decouple(np.zeros((10, 1)), 'shuffle', 0)
    assert decouple(np.random.default_rng(0).standard_normal((20, 2)), 'resample', 0, m=8).shape == (8, 2)


def test_mean_pairwise_kta():
    rng = np.random.default_rng(8)
    data = rng.standard_normal((25, 3))
    family = GaussianFamily()
    value = mean_pairwise_kta(data, family).value
    Ks = [center(family.kernel(data[:, [c]], [c])) for c in range(3)]
    expected = np.mean([kta(Ks[0], Ks[1]).value, kta(Ks[0], Ks[2]).value, kta(Ks[1], Ks[2]).value])
    assert value == pytest.approx(expected)
    with pytest.raises(InputDataError):
        mean_pairwise_kta(data[:, :1], family)


def test_gradient_method_keeps_best_widths():
    rng = np.random.default_rng(9)
    data = rng.standard_normal((80, 3))
    config = OptimizerConfig(method=METHOD_GRADIENT, m=32, max_iters=15, seed=4, target=50.0)
    result = minimize_kta_gradient(data, config)
    assert result.params.shape == (3,)
    assert np.all(result.params >= config.width_bounds[0]) and np.all(result.params <= config.width_bounds[1])
    assert result.kta_final <= result.kta_initial
    assert len(result.trace) == 15 and not result.converged
    again = minimize_kta_gradient(data, config)
    assert np.array_equal(again.params, result.params), 'the run is deterministic given the seed'


def test_gradient_method_stops_at_target():
    rng = np.random.default_rng(10)
    config = OptimizerConfig(method=METHOD_GRADIENT, m=16, max_iters=10, seed=0, target=0.0)
    result = minimize_kta_gradient(rng.standard_normal((40, 2)), config)
    assert result.converged and len(result.trace) == 1


def test_gradient_method_rejects_quantum_family():
    config = OptimizerConfig(method=METHOD_GRADIENT)
    with pytest.raises(UnsupportedKernelError):
        minimize_kta_gradient(np.zeros((10, 2)), config, FidelityFamily())
    with pytest.raises(InputDataError):
        minimize_kta_gradient(np.zeros((10, 2)), OptimizerConfig())


@pytest.mark.parametrize('fields', [
    {'method': 'newton'},
    {'bounds': (0.5, 0.1)},
    {'init': 0.9},
    {'eta': 0.0},
    {'m': 2},
    {'max_iters': 0},
    {'decouple': 'bootstrap'},
])
def test_invalid_optimizer_config(fields):
    with pytest.raises(InputDataError):
        OptimizerConfig(**fields)


def test_optimizer_config_json():
    config = OptimizerConfig(method=METHOD_GRADIENT, eta=0.1, seed=3)
    assert OptimizerConfig.from_json(config.to_json()) == config
    with pytest.raises(InputDataError):
        OptimizerConfig.from_dict({'method': 'gradient', 'momentum': 0.9})


def test_write_trace_csv(tmp_path):
    import pandas as pd
    rng = np.random.default_rng(11)
    x = rng.standard_normal(30)
    result = optimize_scaling(np.column_stack([x, rng.standard_normal(30)]), GaussianFamily(), OptimizerConfig(seed=0))
    file_name = write_trace_csv(result, str(tmp_path / 'trace.csv'))
    frame = pd.read_csv(file_name)
    assert list(frame.columns) == ['iteration', 'gamma', 'kta']
    assert len(frame) == len(result.trace)


def _median_kernel(x):
    return center(gaussian_kernel_matrix(x, median_heuristic_width(x)))


@pytest.mark.parametrize('seed', range(20))
def test_kta_symmetry_and_scale_invariance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 30))
    Kx, Ky = center(_random_psd(rng, n)), center(_random_psd(rng, n))
    value = kta(Kx, Ky).value
    assert abs(kta(Ky, Kx).value - value) <= 1e-12
    a, b = rng.uniform(0.01, 100.0, size=2)
    scaled = kta(KernelMatrix(a * Kx.values, centered=True), KernelMatrix(b * Ky.values, centered=True)).value
    assert abs(scaled - value) <= 1e-12


@pytest.mark.parametrize('seed', range(10))
def test_kta_is_the_null_signal_to_noise_ratio(seed):
    # T_UI / sqrt(Var[T_UI]) with Var = 2 Tr[Kx^2] Tr[Ky^2] / n^4 is n KTA / sqrt(2)
    rng = np.random.default_rng(seed)
    n = 40
    x = rng.standard_normal(n)
    y = x * (seed % 3) + rng.standard_normal(n)
    Kx, Ky = _median_kernel(x), _median_kernel(y)
    result = uncond_test(Kx, Ky, 0.05)
    signal_to_noise = result.statistic / np.sqrt(result.null_variance)
    assert signal_to_noise == pytest.approx(n * kta(Kx, Ky).value / np.sqrt(2.0), rel=1e-12)


def test_kta_of_independent_data_is_small():
    values = []
    for seed in range(50):
        rng = np.random.default_rng(seed)
        x, y = rng.standard_normal(200), rng.standard_normal(200)
        values.append(kta(_median_kernel(x), _median_kernel(y)).value)
    assert np.median(values) < 0.2, f'median KTA {np.median(values)}'


def test_shuffle_decouple_removes_correlation():
    correlations = []
    for seed in range(200):
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(100)
        data = np.column_stack([x, x + 0.5 * rng.standard_normal(100)])
        out = shuffle_decouple(data, seed)
        correlations.append(abs(np.corrcoef(out[:, 0], out[:, 1])[0, 1]))
    assert np.mean(correlations) < 0.15, f'mean |r| {np.mean(correlations)}'
