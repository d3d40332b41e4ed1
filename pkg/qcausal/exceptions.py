# This file defines our own exceptions
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_NO_TRIAL = 4


class QcausalError(Exception):
    """
    the base of every error raised on purpose by qcausal
    """
    pass


class InputDataError(QcausalError):
    """
    used in `core/dataset.py`, `kernels/` and `main.py`
    indicating non-finite, missing or non-numeric input, or a bad option value
    """
    pass


class SizeError(QcausalError):
    """
    indicating too few samples or mismatching matrix dimensions
    """
    pass


class DegenerateDataError(QcausalError):
    """
    indicating data without spread, e.g., a constant column or a zero-trace kernel.
    `column` is set when a single column is to blame
    """

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class NumericError(QcausalError):
    """
    used in `kcit/` and `kta/`
    indicating a non-PSD matrix beyond tolerance or a non-finite objective
    """
    pass


class UnsupportedKernelError(QcausalError):
    """
    used in `kta/gradient.py`
    indicating that the kernel family has no analytic parameter derivative
    """
    pass


class UnsupportedGateError(InputDataError):
    """
    used in `qsim/instructions/`
    indicating a gate name that no instruction class emulates
    """
    pass


class QubitIndexError(QcausalError, IndexError):
    """
    used in `qsim/observable.py`
    indicating a measurement on a qubit the state does not have
    """
    pass


class UnknownJunctionError(InputDataError):
    """
    used in `datagen/`
    indicating the junction kind is not in the closed enumeration
    """
    pass


class CyclicGraphError(QcausalError):
    """
    used in `evaluation/cpdag.py` and `datagen/junctions.py`
    indicating a DAG was expected but a directed cycle was found
    """
    pass


class NodeMismatchError(QcausalError):
    """
    used in `evaluation/`
    indicating two graphs that are compared do not share their node set
    """
    pass


class CITestError(QcausalError):
    """
    used in `pc/skeleton.py`
    wraps a tester failure with the pair and the conditioning set being tested
    """

    def __init__(self, x, y, cond, cause):
        self.x = x
        self.y = y
        self.cond = tuple(cond)
        self.cause = cause
        super().__init__(f"CI test {x} _||_ {y} | {list(self.cond)} failed: {cause}")


class TrialError(QcausalError):
    """
    used in `evaluation/`
    wraps a failure of one benchmark trial with its (alpha, trial) context
    """

    def __init__(self, alpha, trial, cause):
        self.alpha = alpha
        self.trial = trial
        self.cause = cause
        super().__init__(f"trial {trial} at alpha={alpha} failed: {cause}")


def exit_code_of(error):
    """
    Map an exception raised by the library to the process exit code
    """
    if isinstance(error, (DegenerateDataError, NumericError)):
        return EXIT_DEGENERATE
    if isinstance(error, CITestError):
        return exit_code_of(error.cause)
    return EXIT_INPUT
