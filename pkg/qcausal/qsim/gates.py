# Dense gate matrices. Two-qubit gates act on (first, second) with the first
# qubit as the more significant bit
import numpy as np

SQRT2 = np.sqrt(2.0)

H = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
S = np.array([[1, 0], [0, 1j]], dtype=complex)
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

CX = np.array([[1, 0, 0, 0],
               [0, 1, 0, 0],
               [0, 0, 0, 1],
               [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SQRT_ISWAP = np.array([[1, 0, 0, 0],
                       [0, 1 / SQRT2, 1j / SQRT2, 0],
                       [0, 1j / SQRT2, 1 / SQRT2, 0],
                       [0, 0, 0, 1]], dtype=complex)
ISWAP = np.array([[1, 0, 0, 0],
                  [0, 0, 1j, 0],
                  [0, 1j, 0, 0],
                  [0, 0, 0, 1]], dtype=complex)

FIXED_ONE_QUBIT = {'H': H, 'S': S, 'T': T}
FIXED_TWO_QUBIT = {'CX': CX, 'CZ': CZ, 'SqrtISwap': SQRT_ISWAP}


def ry(theta):
    """
    exp(-i theta Y / 2), stacked over the angles in `theta`: shape (len(theta), 2, 2)
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = -s
    out[..., 1, 0] = s
    out[..., 1, 1] = c
    return out


def rx(theta):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = -1j * s
    out[..., 1, 0] = -1j * s
    out[..., 1, 1] = c
    return out


def rz(theta):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.zeros(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(-0.5j * theta)
    out[..., 1, 1] = np.exp(0.5j * theta)
    return out
