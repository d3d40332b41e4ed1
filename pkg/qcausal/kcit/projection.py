from dataclasses import dataclass

import numpy as np

from qcausal.core.kernelmatrix import PSD_TOL, KernelMatrix, check_same_size, symmetrized
from qcausal.exceptions import InputDataError, NumericError


@dataclass(frozen=True)
class ConditionalProjection:
    """
    R_Z = eps (K~_Z + eps I)^-1 = I - K~_Z (K~_Z + eps I)^-1
    """
    epsilon: float
    matrix: np.ndarray

    @property
    def n(self):
        return self.matrix.shape[0]

    def project(self, K):
        """
        R_Z K R_Z
        """
        check_same_size(K, KernelMatrix(self.matrix, validate=False))
        return KernelMatrix(symmetrized(self.matrix @ K.values @ self.matrix), centered=K.centered)


def conditional_projection(Kz, epsilon):
    if not epsilon > 0:
        raise InputDataError(f"epsilon must be positive, got {epsilon}")
    if not Kz.centered:
        raise InputDataError("R_Z is built from the centered kernel of Z")
    eigvals, eigvecs = np.linalg.eigh(Kz.values)
    scale = max(1.0, abs(eigvals[-1]))
    if eigvals[0] < -PSD_TOL * scale:
        raise NumericError(f"kernel of Z is not PSD (min eigenvalue {eigvals[0]:.3e})")
    eigvals = np.clip(eigvals, 0.0, None)
    # the spectral map lambda -> eps / (lambda + eps) keeps the eigenvectors
    matrix = (eigvecs * (epsilon / (eigvals + epsilon))) @ eigvecs.T
    return ConditionalProjection(float(epsilon), symmetrized(matrix))
