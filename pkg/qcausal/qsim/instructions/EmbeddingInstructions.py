from qcausal.exceptions import UnsupportedGateError
from qcausal.qsim.gates import rx, ry, rz


class EmbeddingInstructions:
    def __init__(self, instr_name, instr_operand, _):
        self.instr_name = instr_name
        self.instr_operand = instr_operand

    def emulate(self, state, angles):
        """
        `angles` holds one rotation angle per sample of the batch
        """
        qubit = self.instr_operand
        if self.instr_name == 'RY':
            state.apply_one(ry(angles), qubit)
        elif self.instr_name == 'RXRZ':
            # RX first, then RZ with the same angle
            state.apply_one(rx(angles), qubit)
            state.apply_one(rz(angles), qubit)
        else:
            raise UnsupportedGateError(f"no embedding named {self.instr_name}")
        return state
