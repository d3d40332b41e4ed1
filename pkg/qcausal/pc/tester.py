# The CI testers PC is run with: the kernel test (classical PC or qPC,
# by kernel family) and the d-separation oracle
import logging
from threading import Lock

import networkx as nx

from qcausal.configuration import Configuration
from qcausal.kcit.independence import (NULL_GAMMA, cond_test,
                                       conditional_kernels, uncond_test)
from qcausal.kcit.result import CITestResult
from qcausal.kernels.gaussian import center, product_kernel

logger = logging.getLogger(__name__)


class CITester(object):
    """
    test(x, y, cond, alpha) -> CITestResult, over dataset column indices
    """

    def test(self, x, y, cond, alpha):
        raise NotImplementedError

    def describe(self):
        return {'tester': type(self).__name__}


class KernelCITester(CITester):
    """
    Kernel CI tests on the columns of `dataset`, with kernels from `family`.
    Uncentered kernels of every variable set are cached.
    """

    def __init__(self, dataset, family, epsilon=None, null=NULL_GAMMA, draws=None, seed=None):
        self.dataset = dataset
        self.family = family
        self.epsilon = Configuration.get_epsilon() if epsilon is None else epsilon
        self.null = null
        self.draws = draws
        self.seed = seed
        self._cache = {}
        self._lock = Lock()

    def kernel(self, columns):
        key = tuple(columns)
        with self._lock:
            K = self._cache.get(key)
        if K is None:
            K = self.family.kernel(self.dataset.block(key), list(key))
            with self._lock:
                self._cache[key] = K
        return K

    def test(self, x, y, cond, alpha):
        cond = tuple(cond)
        Kx, Ky = self.kernel([x]), self.kernel([y])
        if not cond:
            return uncond_test(center(Kx), center(Ky), alpha, self.null, self.draws, self.seed)
        Kz = self.kernel(cond)
        Kxz = center(product_kernel(Kx, Kz))
        Kxz_given_z, Ky_given_z = conditional_kernels(Kxz, center(Ky), center(Kz), self.epsilon)
        return cond_test(Kxz_given_z, Ky_given_z, alpha, self.null, self.draws, self.seed)

    def describe(self):
        return {'tester': type(self).__name__, 'kernel': self.family.as_dict(),
                'epsilon': self.epsilon, 'null': self.null}


def _d_separated(dag, x, y, cond):
    # networkx renamed d_separated to is_d_separator in 3.3
    check = getattr(nx, 'is_d_separator', None) or nx.d_separated
    return check(dag, {x}, {y}, set(cond))


class DSeparationOracle(CITester):
    """
    Answers each query by d-separation in a known DAG over the column indices
    """

    def __init__(self, dag):
        if isinstance(dag, nx.DiGraph):
            self.dag = dag
        else:
            self.dag = dag.directed_graph()

    def test(self, x, y, cond, alpha):
        independent = _d_separated(self.dag, x, y, cond)
        p_value = 1.0 if independent else 0.0
        return CITestResult(statistic=0.0, gamma_shape=1.0, gamma_scale=1.0, p_value=p_value,
                            independent=bool(p_value > alpha), alpha=float(alpha), null='oracle')
