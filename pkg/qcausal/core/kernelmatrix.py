import logging

import numpy as np

from qcausal.configuration import Configuration
from qcausal.exceptions import InputDataError, NumericError, SizeError

SYMMETRY_TOL = 1e-12
PSD_TOL = 1e-8


class KernelMatrix(object):
    """
    A symmetric n x n Gram matrix and whether it has been centered by H = I - 11^T/n

    Properties:
        values: the (n, n) float array
        centered: True once H K H has been applied
        n: the sample count
    """

    def __init__(self, values, centered=False, validate=True):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise SizeError(f"kernel matrix must be square, got shape {values.shape}")
        self.values = values
        self.centered = bool(centered)
        if validate:
            self.validate()

    @property
    def n(self):
        return self.values.shape[0]

    def validate(self):
        if not np.all(np.isfinite(self.values)):
            raise InputDataError("kernel matrix has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(self.values))) if self.n else 1.0)
        asym = float(np.max(np.abs(self.values - self.values.T))) if self.n else 0.0
        if asym > SYMMETRY_TOL * scale:
            raise NumericError(f"kernel matrix is not symmetric (max deviation {asym:.3e})")
        # the eigenvalue check is O(n^3), only done when debugging
        if Configuration.get_verbose_flag() == 'debug' and not self.is_psd():
            raise NumericError(f"kernel matrix is not PSD (min eigenvalue {self.min_eigenvalue():.3e})")

    def eigvalsh(self):
        return np.linalg.eigvalsh(self.values)

    def min_eigenvalue(self):
        return float(self.eigvalsh()[0])

    def is_psd(self, tol=PSD_TOL):
        eigs = self.eigvalsh()
        return eigs[0] >= -tol * max(1.0, abs(eigs[-1]))

    def trace(self):
        return float(np.trace(self.values))

    def trace_sq(self):
        """
        Tr[K^2], which is the squared Frobenius norm for a symmetric K
        """
        return float(np.sum(self.values * self.values))

    def __str__(self):
        return f"KernelMatrix(n={self.n}, centered={self.centered})"

    def __repr__(self):
        return self.__str__()


def symmetrized(values):
    """
    Remove the round-off asymmetry of products such as R K R
    """
    values = np.asarray(values, dtype=float)
    return 0.5 * (values + values.T)


def check_same_size(*kernels):
    sizes = {k.n for k in kernels}
    if len(sizes) != 1:
        logging.getLogger(__name__).debug("kernel size mismatch: %s", sizes)
        raise SizeError(f"kernel matrices have different sizes {sorted(sizes)}")
    return sizes.pop()
