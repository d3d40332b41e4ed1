import numpy as np

from qcausal.core.dataset import Dataset
from qcausal.exceptions import DegenerateDataError

# a column whose std is below this fraction of its magnitude counts as constant
CONSTANT_TOL = 1e-12


def standardize(data):
    """
    Zero mean and unit sample standard deviation (n - 1 denominator) per column
    """
    if not isinstance(data, Dataset):
        data = Dataset(data)
    values = data.values
    mean = values.mean(axis=0)
    std = values.std(axis=0, ddof=1) if data.n > 1 else np.zeros(data.p)
    for j, name in enumerate(data.columns):
        scale = max(1.0, float(np.max(np.abs(values[:, j]))))
        if not std[j] > CONSTANT_TOL * scale:
            raise DegenerateDataError(f"column '{name}' is constant", column=name)
    return Dataset((values - mean) / std, data.columns)
