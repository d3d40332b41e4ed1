from qcausal.exceptions import UnsupportedGateError
from qcausal.qsim.gates import FIXED_ONE_QUBIT


class InitInstructions:
    def __init__(self, instr_name, instr_operand, _):
        self.instr_name = instr_name
        self.instr_operand = instr_operand

    def emulate(self, state):
        if self.instr_name not in FIXED_ONE_QUBIT:
            raise UnsupportedGateError(f"no init gate named {self.instr_name}")
        state.apply_one(FIXED_ONE_QUBIT[self.instr_name], self.instr_operand)
        return state
