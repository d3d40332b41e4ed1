import numpy as np

from qcausal.exceptions import InputDataError


def measure_observable(state, qubit, axis):
    """
    O = (sigma_axis + 1) / 2 on `qubit`, for axis in {'x', 'z'}.
    Returns a float for a single-sample state, one value per sample otherwise.
    """
    state.check_qubit(qubit)
    psi = np.moveaxis(state.tensor, qubit + 1, 1).reshape(state.batch, 2, -1)
    zero, one = psi[:, 0, :], psi[:, 1, :]
    if axis == 'z':
        expectation = np.sum(np.abs(zero) ** 2, axis=1) - np.sum(np.abs(one) ** 2, axis=1)
    elif axis == 'x':
        expectation = 2.0 * np.real(np.sum(zero.conj() * one, axis=1))
    else:
        raise InputDataError(f"observable axis must be 'x' or 'z', got {axis!r}")
    values = np.clip((expectation + 1.0) / 2.0, 0.0, 1.0)
    if state.batch == 1:
        return float(values[0])
    return values
