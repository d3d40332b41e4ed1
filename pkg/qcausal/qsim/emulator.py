# This file implements the statevector emulator of the embedding circuits
# and the instruction dispatcher
import logging

import numpy as np

from qcausal.configuration import Configuration
from qcausal.core.kernelmatrix import KernelMatrix, symmetrized
from qcausal.engine.emulator import EmulatorEngine
from qcausal.exceptions import InputDataError, SizeError
from qcausal.qsim.circuit import CircuitSpec, compile_circuit
from qcausal.qsim.instructions import (EmbeddingInstructions,
                                       EntanglerInstructions,
                                       InitInstructions)
from qcausal.qsim.vmstate import StateVector

logger = logging.getLogger(__name__)


# =======================================
# #       Statevector Emulator          #
# =======================================

class StatevectorEmulatorEngine(EmulatorEngine):
    """
    Runs one compiled circuit on a batch of samples at once
    """

    def __init__(self, spec, n_features):
        self.spec = spec
        self.n_features = n_features
        self.instructions = compile_circuit(spec, n_features)

    def init_state(self, batch):
        return StateVector(self.spec.n_qubits, batch)

    def emulate(self, state, operands):
        """
        `operands` is the (batch, n_features) data matrix; embedding angles are scaling * x
        """
        angles = self.spec.scaling * operands
        for instr in self.instructions:
            state = self.emulate_one_instruction(instr, state, angles)
        return state

    def emulate_one_instruction(self, instr, state, operands):
        instruction_map = {
            'Init': InitInstructions,
            'Embedding': EmbeddingInstructions,
            'Entangler': EntanglerInstructions,
        }
        instr_obj = instruction_map[instr.group](instr.name, instr.operand, None)
        if instr.group == 'Embedding':
            return instr_obj.emulate(state, operands[:, instr.feature])
        return instr_obj.emulate(state)


def _as_rows(data):
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, np.newaxis]
    if data.ndim != 2 or data.shape[1] < 1:
        raise SizeError(f"circuit inputs must be an (n, d) matrix with d >= 1, got shape {data.shape}")
    if not np.all(np.isfinite(data)):
        raise InputDataError("circuit inputs contain non-finite values")
    return data


def prepare_states(spec, data):
    """
    The states U(x_i)|0...0> of every row of `data`, as one batch
    """
    data = _as_rows(data)
    engine = StatevectorEmulatorEngine(spec, data.shape[1])
    state = engine.emulate(engine.init_state(data.shape[0]), data)
    # gates are unitary, renormalizing only removes round-off
    state.tensor = state.tensor / state.norms().reshape((-1,) + (1,) * spec.n_qubits)
    return state


def prepare_state(spec, x):
    """
    The state of a single d-vector `x`
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise SizeError(f"a single sample must be a vector, got shape {x.shape}")
    return prepare_states(spec, x[np.newaxis, :])


def default_qubits(n_features):
    return int(min(n_features, Configuration.get_max_qubits()))


def fidelity_kernel_matrix(data, spec):
    """
    K[i, j] = |<psi(x_i)|psi(x_j)>|^2
    """
    data = _as_rows(data)
    if data.shape[0] < 2:
        raise SizeError(f"at least 2 samples are needed, got {data.shape[0]}")
    amplitudes = prepare_states(spec, data).amplitudes
    overlaps = amplitudes.conj() @ amplitudes.T
    values = np.clip(symmetrized(np.abs(overlaps) ** 2), 0.0, 1.0)
    np.fill_diagonal(values, 1.0)
    logger.debug("fidelity kernel of %d samples on %d qubits", data.shape[0], spec.n_qubits)
    return KernelMatrix(values, centered=False)


def spec_for(template, n_features):
    """
    Size a CircuitSpec template (a spec or a dict without n_qubits) to the data
    """
    if isinstance(template, CircuitSpec):
        return template.with_qubits(default_qubits(n_features))
    fields = dict(template)
    fields['n_qubits'] = default_qubits(n_features)
    return CircuitSpec.from_dict(fields)
