# =======================================
# #         Emulator                    #
# =======================================


class EmulatorEngine(object):
    """
    Base of the engines that run a compiled instruction list on a VMstate
    """

    def __init__(self, instructions):
        raise NotImplementedError

    def emulate(self, state, operands):
        """
        Run every instruction on `state`; `operands` are the per-sample data
        """
        raise NotImplementedError

    def emulate_one_instruction(self, instr, state, operands):
        raise NotImplementedError
