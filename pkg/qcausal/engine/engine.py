class VMstate(object):
    """
    The state that an emulator engine evolves instruction by instruction
    """

    def __init__(self, n_qubits, batch=1):
        raise NotImplementedError

    def details(self):
        raise NotImplementedError

    def copy(self):
        raise NotImplementedError
