# The PC driver: standardize, optionally tune the kernel by KTA minimization,
# then skeleton -> colliders -> propagation
import logging
import time
from dataclasses import asdict, dataclass, field, replace
from itertools import combinations
from typing import List, Optional

from qcausal.configuration import Configuration
from qcausal.core.dataset import Dataset
from qcausal.core.graph import MixedGraph, SepsetTable
from qcausal.datagen.standardize import standardize
from qcausal.exceptions import InputDataError, SizeError, UnsupportedKernelError
from qcausal.kcit.independence import MIN_SAMPLES, NULL_GAMMA, uncond_test
from qcausal.kernels.family import FidelityFamily, GaussianFamily, family_of
from qcausal.kernels.gaussian import center
from qcausal.kta.decouple import decouple
from qcausal.kta.optimizer import (METHOD_GRADIENT, OptimizerConfig,
                                   minimize_kta_gradient, optimize_scaling)
from qcausal.pc.orientation import orient_vstructures, propagate_orientations
from qcausal.pc.skeleton import skeleton
from qcausal.pc.tester import KernelCITester
from qcausal.qsim.circuit import CircuitSpec

logger = logging.getLogger(__name__)

KERNEL_GAUSSIAN = GaussianFamily.name
KERNEL_QUANTUM = FidelityFamily.name


@dataclass
class PCConfig:
    """
    kernel: 'gaussian' (classical PC) or 'quantum' (qPC)
    circuit: the ansatz of the quantum kernel, the configured default when None
    optimize: tune the kernel by KTA minimization before the tests
    """
    kernel: str = KERNEL_GAUSSIAN
    alpha: float = field(default_factory=Configuration.get_alpha)
    epsilon: float = field(default_factory=Configuration.get_epsilon)
    circuit: Optional[CircuitSpec] = None
    optimize: bool = False
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    max_cond_size: Optional[int] = field(default_factory=Configuration.get_max_cond_size)
    null: str = NULL_GAMMA
    null_draws: Optional[int] = None
    seed: Optional[int] = None
    standardize: bool = True

    def __post_init__(self):
        if self.kernel not in (KERNEL_GAUSSIAN, KERNEL_QUANTUM):
            raise InputDataError(f"kernel must be '{KERNEL_GAUSSIAN}' or '{KERNEL_QUANTUM}', got {self.kernel!r}")
        if not 0 < self.alpha < 1:
            raise InputDataError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.epsilon > 0:
            raise InputDataError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_cond_size is not None and self.max_cond_size < 0:
            raise InputDataError(f"max_cond_size must be non-negative, got {self.max_cond_size}")

    def family(self):
        return family_of(self.kernel, self.circuit)

    def seeded_optimizer(self):
        """
        The optimizer config, seeded from the run seed when it has none of its own
        """
        if self.optimizer.seed is None and self.seed is not None:
            return replace(self.optimizer, seed=self.seed)
        return self.optimizer

    def as_dict(self):
        out = asdict(self)
        out['circuit'] = self.circuit.as_dict() if self.circuit is not None else None
        out['optimizer'] = self.optimizer.as_dict()
        return out


@dataclass
class RunReport:
    config: dict
    columns: List[str]
    n: int
    kernel: dict = field(default_factory=dict)
    optimization: Optional[dict] = None
    null_before_after: List[dict] = field(default_factory=list)
    tests: list = field(default_factory=list)
    elapsed: float = 0.0
    # the OptimizationResult, whose trace is exported on its own
    optimizer_result: object = field(default=None, repr=False)

    def test_rows(self):
        return [record.as_row() for record in self.tests]

    def as_dict(self):
        return {
            'config': self.config,
            'columns': self.columns,
            'n': self.n,
            'kernel': self.kernel,
            'optimization': self.optimization,
            'null_before_after': self.null_before_after,
            'tests': self.test_rows(),
            'elapsed': self.elapsed,
        }


def _null_summary(data, before, after, config):
    """
    The gamma null of every decoupled column pair under the default and the tuned kernel
    """
    optimizer = config.seeded_optimizer()
    decoupled = decouple(data.values, optimizer.decouple, optimizer.seed, m=optimizer.m)
    rows = []
    for a, b in combinations(range(data.p), 2):
        row = {'x': data.columns[a], 'y': data.columns[b]}
        for tag, family in (('before', before), ('after', after)):
            Ka = center(family.kernel(decoupled[:, [a]], [a]))
            Kb = center(family.kernel(decoupled[:, [b]], [b]))
            result = uncond_test(Ka, Kb, config.alpha)
            row[tag] = {'shape': result.gamma_shape, 'scale': result.gamma_scale,
                        'p_value': result.p_value}
        rows.append(row)
    return rows


def tune_family(data, config):
    """
    The kernel family of `config`, tuned on decoupled data when config.optimize is set.
    Returns (family, optimization result or None).
    """
    family = config.family()
    if not config.optimize or data.p < 2:
        return family, None
    optimizer = config.seeded_optimizer()
    if optimizer.method == METHOD_GRADIENT:
        if not family.differentiable:
            raise UnsupportedKernelError("gradient KTA minimization applies to the Gaussian kernel only")
        result = minimize_kta_gradient(data.values, optimizer, family)
        return family.with_widths(dict(enumerate(result.params))), result
    result = optimize_scaling(data.values, family, optimizer)
    return family.with_scaling(result.params), result


def run_pc(data, config=None, tester=None):
    """
    Returns (CPDAG, sepsets, report). `tester` replaces the kernel tester when given.
    """
    config = config or PCConfig()
    start = time.time()
    if not isinstance(data, Dataset):
        data = Dataset(data)
    if data.p >= 2 and data.n < MIN_SAMPLES:
        raise SizeError(f"PC needs at least {MIN_SAMPLES} samples, got {data.n}")
    if config.standardize:
        data = standardize(data)
    report = RunReport(config=config.as_dict(), columns=list(data.columns), n=data.n)
    if data.p < 2:
        report.elapsed = time.time() - start
        return MixedGraph(data.columns), SepsetTable(), report

    if tester is None:
        family, optimization = tune_family(data, config)
        if optimization is not None:
            report.optimization = optimization.as_dict()
            report.optimizer_result = optimization
            report.null_before_after = _null_summary(data, config.family(), family, config)
        tester = KernelCITester(data, family, config.epsilon, config.null, config.null_draws, config.seed)
    report.kernel = tester.describe()

    graph, sepsets, records = skeleton(data.columns, tester, config.alpha, config.max_cond_size)
    report.tests = records
    cpdag = propagate_orientations(orient_vstructures(graph, sepsets))
    report.elapsed = time.time() - start
    logger.info("PC on %d variables, %d samples: %d tests, %s", data.p, data.n, len(records), cpdag)
    return cpdag, sepsets, report
