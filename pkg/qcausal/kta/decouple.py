# Break the dependence between columns while keeping their marginals,
# so that KTA measured afterwards is the false-positive risk of the kernel
import numpy as np

from qcausal.configuration import Configuration
from qcausal.exceptions import InputDataError, SizeError

DECOUPLE_SHUFFLE = 'shuffle'
DECOUPLE_RESAMPLE = 'resample'
DECOUPLE_AUTO = 'auto'
DECOUPLE_MODES = (DECOUPLE_SHUFFLE, DECOUPLE_RESAMPLE, DECOUPLE_AUTO)


def _as_columns(data):
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise SizeError(f"decoupling needs an (n, p) matrix with p >= 2, got shape {data.shape}")
    if data.shape[0] < 2:
        raise SizeError(f"decoupling needs n >= 2, got {data.shape[0]}")
    return data


def shuffle_decouple(data, seed):
    """
    Permute every column but the first by its own uniform permutation.
    With two columns only the second one moves.
    """
    data = _as_columns(data)
    rng = np.random.default_rng(seed)
    out = data.copy()
    for c in range(1, data.shape[1]):
        out[:, c] = data[rng.permutation(data.shape[0]), c]
    return out


def moment_resample(data, m, seed):
    """
    Draw m rows of independent normals with the column means and standard deviations of `data`
    """
    data = _as_columns(data)
    rng = np.random.default_rng(seed)
    mean = data.mean(axis=0)
    std = data.std(axis=0, ddof=1)
    return mean + std * rng.standard_normal((m, data.shape[1]))


def resolve_mode(mode, n):
    if mode not in DECOUPLE_MODES:
        raise InputDataError(f"decouple must be one of {DECOUPLE_MODES}, got {mode!r}")
    if mode == DECOUPLE_AUTO:
        return DECOUPLE_SHUFFLE if n <= Configuration.get_shuffle_threshold() else DECOUPLE_RESAMPLE
    return mode


def decouple(data, mode, seed, m=None):
    data = _as_columns(data)
    mode = resolve_mode(mode, data.shape[0])
    if mode == DECOUPLE_SHUFFLE:
        return shuffle_decouple(data, seed)
    return moment_resample(data, m or data.shape[0], seed)
