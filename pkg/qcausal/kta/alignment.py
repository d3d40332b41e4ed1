from dataclasses import dataclass
from itertools import combinations

import numpy as np

from qcausal.core.kernelmatrix import check_same_size
from qcausal.exceptions import DegenerateDataError, InputDataError, NumericError
from qcausal.kernels.gaussian import center


@dataclass(frozen=True)
class KtaValue:
    """
    KTA(X, Y) = Tr[K~_X K~_Y] / sqrt(Tr[K~_X^2] Tr[K~_Y^2]), in [0, 1] for PSD kernels
    """
    value: float

    @property
    def loss(self):
        """
        f = -log KTA
        """
        return float(-np.log(self.value)) if self.value > 0 else float('inf')

    def __float__(self):
        return self.value


def kta(Kx, Ky):
    if not (Kx.centered and Ky.centered):
        raise InputDataError("KTA is defined on centered kernel matrices")
    check_same_size(Kx, Ky)
    norm_x, norm_y = Kx.trace_sq(), Ky.trace_sq()
    if norm_x <= 0 or norm_y <= 0:
        raise DegenerateDataError("a centered kernel is zero (constant data), KTA is undefined")
    value = float(np.sum(Kx.values * Ky.values)) / np.sqrt(norm_x * norm_y)
    if not np.isfinite(value):
        raise NumericError(f"KTA is not finite: {value}")
    return KtaValue(min(1.0, max(0.0, value)))


def centered_kernels(data, family):
    """
    The centered kernel of each column of the (n, p) `data`
    """
    data = np.asarray(data, dtype=float)
    return [center(family.kernel(data[:, [c]], [c])) for c in range(data.shape[1])]


def mean_pairwise_kta(data, family):
    """
    The mean KTA over all unordered column pairs, the objective on multivariable data
    """
    kernels = centered_kernels(data, family)
    if len(kernels) < 2:
        raise InputDataError("KTA needs at least two columns")
    values = [kta(kernels[a], kernels[b]).value for a, b in combinations(range(len(kernels)), 2)]
    return KtaValue(float(np.mean(values)))
