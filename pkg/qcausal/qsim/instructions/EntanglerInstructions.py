from qcausal.exceptions import UnsupportedGateError
from qcausal.qsim.gates import FIXED_TWO_QUBIT


class EntanglerInstructions:
    def __init__(self, instr_name, instr_operand, _):
        self.instr_name = instr_name
        self.instr_operand = instr_operand

    def emulate(self, state):
        if self.instr_name not in FIXED_TWO_QUBIT:
            raise UnsupportedGateError(f"no entangler named {self.instr_name}")
        state.apply_two(FIXED_TWO_QUBIT[self.instr_name], self.instr_operand)
        return state
