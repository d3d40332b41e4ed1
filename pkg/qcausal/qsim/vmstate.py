import numpy as np

from qcausal.engine.engine import VMstate
from qcausal.exceptions import QubitIndexError

NORM_TOL = 1e-10


class StateVector(VMstate):
    """
    A batch of pure n-qubit states, one per sample.

    The amplitudes are kept as a tensor of shape (batch, 2, ..., 2); axis q + 1
    is qubit q, and qubit 0 is the most significant bit of the basis index.
    """

    def __init__(self, n_qubits, batch=1):
        if n_qubits < 1:
            raise QubitIndexError(f"a state needs at least one qubit, got {n_qubits}")
        self.n_qubits = n_qubits
        self.batch = batch
        self.tensor = np.zeros((batch,) + (2,) * n_qubits, dtype=complex)
        self.tensor[(slice(None),) + (0,) * n_qubits] = 1.0

    @classmethod
    def from_amplitudes(cls, amplitudes):
        amplitudes = np.atleast_2d(np.asarray(amplitudes, dtype=complex))
        n_qubits = int(np.log2(amplitudes.shape[1]))
        if 2 ** n_qubits != amplitudes.shape[1]:
            raise QubitIndexError(f"{amplitudes.shape[1]} amplitudes do not form a qubit register")
        state = cls(n_qubits, amplitudes.shape[0])
        state.tensor = amplitudes.reshape(state.tensor.shape).copy()
        return state

    @property
    def amplitudes(self):
        """
        (batch, 2^n) amplitudes
        """
        return self.tensor.reshape(self.batch, 2 ** self.n_qubits)

    def vector(self, sample=0):
        return self.amplitudes[sample]

    def norms(self):
        return np.linalg.norm(self.amplitudes, axis=1)

    def is_normalized(self, tol=NORM_TOL):
        return bool(np.all(np.abs(self.norms() - 1.0) <= tol))

    def check_qubit(self, qubit):
        if not 0 <= qubit < self.n_qubits:
            raise QubitIndexError(f"qubit {qubit} out of range for a {self.n_qubits}-qubit state")

    def apply_one(self, matrices, qubit):
        """
        Apply a (2, 2) gate, or a (batch, 2, 2) stack of per-sample gates, on `qubit`
        """
        self.check_qubit(qubit)
        psi = np.moveaxis(self.tensor, qubit + 1, 1)
        shape = psi.shape
        psi = psi.reshape(self.batch, 2, -1)
        if matrices.ndim == 2:
            psi = np.einsum('ij,bjk->bik', matrices, psi)
        else:
            psi = np.einsum('bij,bjk->bik', matrices, psi)
        self.tensor = np.moveaxis(psi.reshape(shape), 1, qubit + 1)

    def apply_two(self, matrix, qubits):
        """
        Apply a (4, 4) gate on the ordered pair `qubits`; the first qubit is
        the more significant bit of the gate's basis
        """
        q0, q1 = qubits
        self.check_qubit(q0)
        self.check_qubit(q1)
        if q0 == q1:
            raise QubitIndexError(f"a two-qubit gate needs two distinct qubits, got {qubits}")
        psi = np.moveaxis(self.tensor, (q0 + 1, q1 + 1), (1, 2))
        shape = psi.shape
        psi = np.einsum('ij,bjk->bik', matrix, psi.reshape(self.batch, 4, -1))
        self.tensor = np.moveaxis(psi.reshape(shape), (1, 2), (q0 + 1, q1 + 1))

    def details(self):
        return f"StateVector(n_qubits={self.n_qubits}, batch={self.batch})"

    def copy(self):
        state = StateVector(self.n_qubits, self.batch)
        state.tensor = self.tensor.copy()
        return state

    def __str__(self):
        return self.details()
