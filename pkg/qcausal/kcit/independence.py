# The kernel-based unconditional and conditional independence tests with
# gamma-approximated (or Monte-Carlo simulated) null distributions
import logging

import numpy as np
from scipy import stats

from qcausal.configuration import Configuration
from qcausal.core.kernelmatrix import KernelMatrix, check_same_size
from qcausal.exceptions import DegenerateDataError, InputDataError, NumericError, SizeError
from qcausal.kcit.projection import conditional_projection
from qcausal.kcit.result import CITestResult

logger = logging.getLogger(__name__)

MIN_SAMPLES = 4
# traces below this (relative to n) count as zero
TRACE_TOL = 1e-12
# eigenvalues of the null below this fraction of the largest are dropped
NULL_EIG_TOL = 1e-10

NULL_GAMMA = 'gamma'
NULL_MONTE_CARLO = 'monte_carlo'


def _check_alpha(alpha):
    if not 0 < alpha < 1:
        raise InputDataError(f"alpha must lie in (0, 1), got {alpha}")


def _check_centered(*kernels):
    for K in kernels:
        if not K.centered:
            raise InputDataError("the independence tests take centered kernel matrices")


def gamma_fit(mean, variance):
    """
    The gamma (shape k, scale theta) with the given mean and variance
    """
    if not (mean > 0 and variance > 0) or not np.isfinite(mean + variance):
        raise DegenerateDataError(f"null moments must be positive, got mean={mean}, variance={variance}")
    return mean ** 2 / variance, variance / mean


def _null_draws(weights, draws, seed):
    """
    Samples of sum_k w_k chi^2_1
    """
    rng = np.random.default_rng(seed)
    weights = weights[weights > NULL_EIG_TOL * max(weights.max(), 0.0)] if weights.size else weights
    if weights.size == 0:
        raise DegenerateDataError("the null spectrum is empty")
    samples = np.empty(draws)
    # chunked so that draws x weights never grows past a few million entries
    chunk = max(1, 4_000_000 // weights.size)
    for start in range(0, draws, chunk):
        stop = min(draws, start + chunk)
        samples[start:stop] = rng.chisquare(1, size=(stop - start, weights.size)) @ weights
    return samples


def _result(statistic, mean, variance, alpha, null, draws, seed, weights):
    shape, scale = gamma_fit(mean, variance)
    if null == NULL_GAMMA:
        p_value = float(stats.gamma.sf(statistic, shape, scale=scale))
        critical = float(stats.gamma.ppf(1 - alpha, shape, scale=scale))
    elif null == NULL_MONTE_CARLO:
        samples = _null_draws(weights(), draws, seed)
        p_value = float(np.mean(samples >= statistic))
        critical = float(np.quantile(samples, 1 - alpha))
    else:
        raise InputDataError(f"null must be '{NULL_GAMMA}' or '{NULL_MONTE_CARLO}', got {null!r}")
    if not np.isfinite(p_value):
        raise NumericError(f"p-value is not finite (statistic={statistic}, k={shape}, theta={scale})")
    p_value = min(1.0, max(0.0, p_value))
    return CITestResult(statistic=float(statistic), gamma_shape=float(shape), gamma_scale=float(scale),
                        p_value=p_value, independent=bool(p_value > alpha), alpha=float(alpha),
                        critical_value=critical, null=null)


def uncond_test(Kx, Ky, alpha, null=NULL_GAMMA, draws=None, seed=None):
    """
    T_UI = (1/n) Tr[K~_X K~_Y] against the gamma null with
    k = Tr[K~_X]^2 Tr[K~_Y]^2 / (2 Tr[K~_X^2] Tr[K~_Y^2]),
    theta = 2 Tr[K~_X^2] Tr[K~_Y^2] / (n^2 Tr[K~_X] Tr[K~_Y]).
    """
    _check_alpha(alpha)
    _check_centered(Kx, Ky)
    n = check_same_size(Kx, Ky)
    if n < MIN_SAMPLES:
        raise SizeError(f"the unconditional test needs n >= {MIN_SAMPLES}, got {n}")
    tr_x, tr_y = Kx.trace(), Ky.trace()
    for name, tr in (('X', tr_x), ('Y', tr_y)):
        if tr <= TRACE_TOL * n:
            raise DegenerateDataError(f"centered kernel of {name} has zero trace (constant data)")
    statistic = max(0.0, float(np.sum(Kx.values * Ky.values)) / n)
    mean = tr_x * tr_y / n ** 2
    variance = 2.0 * Kx.trace_sq() * Ky.trace_sq() / n ** 4

    def weights():
        ex = np.clip(Kx.eigvalsh(), 0.0, None)
        ey = np.clip(Ky.eigvalsh(), 0.0, None)
        return np.outer(ex, ey).ravel() / n ** 2

    if draws is None:
        draws = Configuration.get_null_draws()
    return _result(statistic, mean, variance, alpha, null, draws, seed, weights)


def conditional_kernels(Kxz, Ky, Kz, epsilon=None):
    """
    (R_Z K~_XZ R_Z, R_Z K~_Y R_Z), where K~_XZ is the centered product kernel of (X, Z)
    """
    _check_centered(Kxz, Ky, Kz)
    check_same_size(Kxz, Ky, Kz)
    if epsilon is None:
        epsilon = Configuration.get_epsilon()
    projection = conditional_projection(Kz, epsilon)
    return projection.project(Kxz), projection.project(Ky)


def m_trace_stats(Ka, Kb):
    """
    Tr[M] and Tr[M^2] of the n^2 x n^2 matrix M of the conditional null,
    through Tr[M] = (1/n) sum_k Ka_kk Kb_kk and Tr[M^2] = (1/n^2) sum_kl (Ka_kl Kb_kl)^2
    """
    n = check_same_size(Ka, Kb)
    trace_m = float(np.dot(np.diag(Ka.values), np.diag(Kb.values))) / n
    trace_m2 = float(np.sum((Ka.values * Kb.values) ** 2)) / n ** 2
    return trace_m, trace_m2


def cond_test(Kxz_given_z, Ky_given_z, alpha, null=NULL_GAMMA, draws=None, seed=None):
    """
    T_CI = (1/n) Tr[K~_XZ|Z K~_Y|Z] against the gamma with mean Tr[M] and variance 2 Tr[M^2]
    """
    _check_alpha(alpha)
    n = check_same_size(Kxz_given_z, Ky_given_z)
    if n < MIN_SAMPLES:
        raise SizeError(f"the conditional test needs n >= {MIN_SAMPLES}, got {n}")
    trace_m, trace_m2 = m_trace_stats(Kxz_given_z, Ky_given_z)
    if trace_m <= TRACE_TOL or trace_m2 <= 0:
        raise DegenerateDataError(f"Tr[M] = {trace_m:.3e}: residual kernels carry no variance")
    statistic = max(0.0, float(np.sum(Kxz_given_z.values * Ky_given_z.values)) / n)

    def weights():
        # the nonzero spectrum of M is that of (Ka o Kb) / n
        hadamard = KernelMatrix(Kxz_given_z.values * Ky_given_z.values, validate=False)
        return np.clip(hadamard.eigvalsh(), 0.0, None) / n

    if draws is None:
        draws = Configuration.get_null_draws()
    return _result(statistic, trace_m, 2.0 * trace_m2, alpha, null, draws, seed, weights)
