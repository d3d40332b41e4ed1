# Classical kernels: the Gaussian kernel, its median-heuristic width,
# centering and the Hadamard product used to build K of (X, Z)
import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from qcausal.core.kernelmatrix import KernelMatrix, check_same_size, symmetrized
from qcausal.exceptions import DegenerateDataError, InputDataError, SizeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaussianKernelParams:
    """
    The bandwidth of the Gaussian kernel exp(-|x - x'|^2 / (2 width^2))
    """
    width: float

    def __post_init__(self):
        if not np.isfinite(self.width) or self.width <= 0:
            raise InputDataError(f"Gaussian width must be a positive real, got {self.width}")


def as_samples(data):
    """
    Return `data` as an (n, d) float matrix with n >= 2 finite rows
    """
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, np.newaxis]
    if data.ndim != 2:
        raise SizeError(f"samples must form an (n, d) matrix, got shape {data.shape}")
    if data.shape[0] < 2:
        raise SizeError(f"at least 2 samples are needed, got {data.shape[0]}")
    if not np.all(np.isfinite(data)):
        raise InputDataError("samples contain non-finite values")
    return data


def squared_distances(data):
    """
    The condensed vector of squared Euclidean distances over pairs i < j
    """
    return pdist(as_samples(data), metric='sqeuclidean')


def gaussian_kernel_matrix(data, params):
    data = as_samples(data)
    if not isinstance(params, GaussianKernelParams):
        params = GaussianKernelParams(float(params))
    sq = squareform(pdist(data, metric='sqeuclidean'))
    values = np.exp(-sq / (2.0 * params.width ** 2))
    # squareform leaves exact zeros on the diagonal, so exp gives exactly 1
    return KernelMatrix(values, centered=False)


def median_heuristic_width(data):
    """
    width = sqrt(median_{i<j} |x_i - x_j|^2 / 2), lower median on ties.

    When more than half of the pairs coincide, the median is taken over the
    nonzero distances only, so that the width stays positive.
    """
    sq = np.sort(squared_distances(data))
    if sq[-1] <= 0:
        raise DegenerateDataError("all points are identical, the median heuristic is undefined")
    med = sq[(len(sq) - 1) // 2]
    if med <= 0:
        nonzero = sq[sq > 0]
        med = nonzero[(len(nonzero) - 1) // 2]
        logger.info("median squared distance is 0, falling back to the median of %d nonzero pairs",
                    len(nonzero))
    return GaussianKernelParams(float(np.sqrt(med / 2.0)))


def center(K):
    """
    H K H with H = I - 11^T / n
    """
    values = K.values if isinstance(K, KernelMatrix) else np.asarray(K, dtype=float)
    row = values.mean(axis=0, keepdims=True)
    col = values.mean(axis=1, keepdims=True)
    centered = values - row - col + values.mean()
    return KernelMatrix(symmetrized(centered), centered=True)


def product_kernel(Ka, Kb):
    check_same_size(Ka, Kb)
    if Ka.centered or Kb.centered:
        raise InputDataError("the product kernel is formed from uncentered kernels")
    return KernelMatrix(Ka.values * Kb.values, centered=False)
