import os


class Configuration:
    """
    The static class that maintain the user's input option
    and the library-wide defaults
    """
    _verbose_flag = 'warning'       # logging level, overridden by -v or QCAUSAL_LOG
    # the run name, derived from the input file or the sub-command
    _run_name = 'qcausal'
    # the start time of the run
    _start_time = ''
    # where logs and results are written
    _output_root = './output'

    # significance level of the CI tests, 0.05 for synthetic data
    # (0.01 is the customary level for real data)
    _alpha = 0.05
    # ridge regularization used by R_Z
    _epsilon = 1e-3
    # the 2^n cost of the statevector is bounded by this many qubits
    _max_qubits = 8
    # None means the conditioning sets grow until no adjacency admits them
    _max_cond_size = None
    # worker threads for the benchmark trials
    _jobs = os.cpu_count() or 1
    # datasets up to this size are decoupled by shuffling, larger ones by resampling
    _shuffle_threshold = 500
    # draws of the optional Monte-Carlo null
    _null_draws = 1000

    # scaling-parameter search
    _scaling_bounds = (0.01, 0.5)
    _scaling_init = 0.1
    _scalar_xatol = 1e-4
    _scalar_maxiter = 100

    # gradient KTA minimization
    _gradient_eta = 0.05
    _gradient_m = 64
    _gradient_max_iters = 50
    _gradient_target = 5.0

    # the ansatz used by qPC unless the user gives one
    _default_ansatz = {
        'init': 'H',
        'embedding': 'RY',
        'entangler_gate': 'CX',
        'entangler_topology': 'ladder',
        'depth': 5,
        'scaling': 1.0,
    }
    # the circuit used to source quantum junction data
    _generator_ansatz = {
        'n_qubits': 2,
        'init': 'H',
        'embedding': 'RY',
        'entangler_gate': 'CX',
        'entangler_topology': 'ladder',
        'depth': 1,
        'scaling': 1.0,
    }

    # the significance set of the ROC sweeps
    _roc_alphas = (0.999999, 0.9, 0.75, 0.5, 0.25, 0.2, 0.1, 0.05,
                   0.01, 0.001, 0.0001, 0.00001)

    @ staticmethod
    def set_verbose_flag(verbose_flag):
        Configuration._verbose_flag = verbose_flag

    @ staticmethod
    def get_verbose_flag():
        return Configuration._verbose_flag

    @ staticmethod
    def set_run_name(path_or_name):
        # keep the file name without path and extended type
        Configuration._run_name = os.path.basename(path_or_name).split('.')[0]

    @ staticmethod
    def get_run_name():
        return Configuration._run_name

    @ staticmethod
    def set_start_time(start_time):
        Configuration._start_time = start_time

    @ staticmethod
    def get_start_time():
        return Configuration._start_time

    @ staticmethod
    def set_output_root(output_root):
        Configuration._output_root = output_root

    @ staticmethod
    def get_output_root():
        return Configuration._output_root

    @ staticmethod
    def get_alpha():
        return Configuration._alpha

    @ staticmethod
    def get_epsilon():
        return Configuration._epsilon

    @ staticmethod
    def set_max_qubits(max_qubits):
        Configuration._max_qubits = max_qubits

    @ staticmethod
    def get_max_qubits():
        return Configuration._max_qubits

    @ staticmethod
    def get_max_cond_size():
        return Configuration._max_cond_size

    @ staticmethod
    def set_jobs(jobs):
        Configuration._jobs = max(1, jobs)

    @ staticmethod
    def get_jobs():
        return Configuration._jobs

    @ staticmethod
    def get_shuffle_threshold():
        return Configuration._shuffle_threshold

    @ staticmethod
    def get_null_draws():
        return Configuration._null_draws

    @ staticmethod
    def get_scaling_bounds():
        return Configuration._scaling_bounds

    @ staticmethod
    def get_scaling_init():
        return Configuration._scaling_init

    @ staticmethod
    def get_scalar_tolerance():
        """
        (xatol, maxiter) of the bounded scalar search
        """
        return Configuration._scalar_xatol, Configuration._scalar_maxiter

    @ staticmethod
    def get_gradient_defaults():
        """
        (eta, m, max_iters, target) of the gradient KTA minimization
        """
        return (Configuration._gradient_eta, Configuration._gradient_m,
                Configuration._gradient_max_iters, Configuration._gradient_target)

    @ staticmethod
    def get_default_ansatz():
        return dict(Configuration._default_ansatz)

    @ staticmethod
    def get_generator_ansatz():
        return dict(Configuration._generator_ansatz)

    @ staticmethod
    def get_roc_alphas():
        return list(Configuration._roc_alphas)
