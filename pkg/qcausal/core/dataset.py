from os import path

import numpy as np
import pandas as pd

from qcausal.exceptions import InputDataError, SizeError


class Dataset(object):
    """
    Column-labeled samples: rows are i.i.d. observations, columns are variables
    """

    def __init__(self, values, columns=None):
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, np.newaxis]
        if values.ndim != 2:
            raise SizeError(f"dataset must be a 2-d matrix, got {values.ndim} dimensions")
        if columns is None:
            columns = [f"X{i}" for i in range(values.shape[1])]
        columns = [str(c) for c in columns]
        if len(columns) != values.shape[1]:
            raise SizeError(f"{len(columns)} column names for {values.shape[1]} columns")
        if len(set(columns)) != len(columns):
            raise InputDataError(f"duplicated column names in {columns}")
        bad = np.argwhere(~np.isfinite(values))
        if len(bad):
            row, col = bad[0]
            raise InputDataError(f"non-finite value at row {row}, column '{columns[col]}'")
        self.values = values
        self.columns = columns

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def p(self):
        return self.values.shape[1]

    def index_of(self, column):
        if isinstance(column, (int, np.integer)):
            return int(column)
        try:
            return self.columns.index(column)
        except ValueError:
            raise InputDataError(f"no column named '{column}' in {self.columns}")

    def column(self, column):
        return self.values[:, self.index_of(column)]

    def block(self, indices):
        """
        The (n, k) sub-matrix of the given column indices, in the given order
        """
        return self.values[:, [self.index_of(i) for i in indices]]

    def select(self, columns):
        idx = [self.index_of(c) for c in columns]
        return Dataset(self.values[:, idx], [self.columns[i] for i in idx])

    def subsample(self, size, rng):
        if size > self.n:
            raise SizeError(f"cannot draw {size} rows from {self.n}")
        rows = np.sort(rng.choice(self.n, size=size, replace=False))
        return Dataset(self.values[rows], self.columns)

    def to_frame(self):
        return pd.DataFrame(self.values, columns=self.columns)

    def to_csv(self, file_name):
        # 17 significant digits, so that values survive a round trip
        self.to_frame().to_csv(file_name, index=False, float_format='%.17g')
        return file_name

    @staticmethod
    def read_csv(file_name):
        """
        Load a comma-separated UTF-8 file whose header row names the variables.
        Row numbers in the diagnostics count the header as row 1
        """
        if not path.exists(file_name):
            raise InputDataError(f"input file not found: {file_name}")
        try:
            frame = pd.read_csv(file_name, dtype=str, keep_default_na=False, encoding='utf-8')
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise InputDataError(f"cannot parse {file_name}: {e}")
        # pandas renames repeated header cells, so the raw header row is checked
        header = pd.read_csv(file_name, header=None, nrows=1, dtype=str, encoding='utf-8').iloc[0].tolist()
        if len(set(header)) != len(header):
            raise InputDataError(f"{file_name}: duplicated column names in {header}")
        if frame.shape[1] == 0 or frame.shape[0] == 0:
            raise InputDataError(f"{file_name} has no data rows")
        values = np.empty(frame.shape, dtype=float)
        for j, name in enumerate(frame.columns):
            cells = frame[name].str.strip()
            numeric = pd.to_numeric(cells, errors='coerce')
            bad = numeric.isna().to_numpy()
            if bad.any():
                i = int(np.argmax(bad))
                cell = cells.iloc[i]
                what = 'missing value' if cell == '' else f"non-numeric value '{cell}'"
                raise InputDataError(f"{file_name}: {what} at row {i + 2}, column '{name}'")
            values[:, j] = numeric.to_numpy(dtype=float)
        return Dataset(values, list(frame.columns))

    def __str__(self):
        return f"Dataset(n={self.n}, columns={self.columns})"
