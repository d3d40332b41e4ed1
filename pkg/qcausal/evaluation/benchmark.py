# The benchmark protocol: seeded junction trials scored by skeleton
# confusion over a significance sweep, and Markov-equivalence accuracy grids
import logging
from dataclasses import asdict, dataclass, field
from os import path
from typing import List, Optional

import numpy as np
import pandas as pd

from qcausal.configuration import Configuration
from qcausal.core.dataset import Dataset
from qcausal.datagen.junctions import (DEFAULT_NOISE, NONLINEAR, GroundTruth,
                                       gen_junction, gen_quantum_junction,
                                       read_ground_truth)
from qcausal.datagen.standardize import standardize
from qcausal.evaluation.confusion import SkeletonConfusion, skeleton_confusion, tpr_fpr
from qcausal.evaluation.cpdag import markov_accuracy
from qcausal.evaluation.workers import run_tasks
from qcausal.exceptions import InputDataError, SizeError, TrialError
from qcausal.pc.run import KERNEL_GAUSSIAN, KERNEL_QUANTUM, PCConfig, run_pc, tune_family
from qcausal.pc.tester import KernelCITester
from qcausal.utils import write_csv

logger = logging.getLogger(__name__)

PC_GAUSSIAN = 'pc-gaussian'
QPC_DEFAULT = 'qpc-default'
QPC_OPTIMIZED = 'qpc-optimized'
METHODS = (PC_GAUSSIAN, QPC_DEFAULT, QPC_OPTIMIZED)

ROC_COLUMNS = ['alpha', 'trials', 'tp', 'fp', 'tn', 'fn', 'tpr', 'fpr']
ACCURACY_COLUMNS = ['kind', 'n', 'method', 'trials', 'accuracy', 'stderr']


@dataclass
class GeneratorConfig:
    kind: str
    n: int
    noise_ratio: float = DEFAULT_NOISE
    relation: str = NONLINEAR
    quantum: bool = False
    generator_spec: Optional[dict] = None

    def generate(self, seed):
        if self.quantum:
            return gen_quantum_junction(self.kind, self.n, self.generator_spec, seed,
                                        self.noise_ratio, self.relation)
        return gen_junction(self.kind, self.n, self.noise_ratio, seed, self.relation)

    def as_dict(self):
        return asdict(self)


@dataclass
class SubsampleGenerator:
    """
    Trials on a fixed dataset with a known DAG: each trial draws n rows
    without replacement, and every trial is scored against the same truth.
    The dataset is restricted to the truth's nodes, in their order.
    """
    kind: str
    n: int
    data: Dataset
    truth: GroundTruth

    def __post_init__(self):
        self.data = self.data.select(list(self.truth.labels))
        if self.n < 1:
            raise InputDataError(f"the subsample size must be positive, got {self.n}")
        if self.n > self.data.n:
            raise SizeError(f"cannot draw {self.n} rows from the {self.data.n} of {self.kind}")

    @staticmethod
    def from_files(csv_file, truth_file, n):
        kind = path.splitext(path.basename(csv_file))[0]
        return SubsampleGenerator(kind, n, Dataset.read_csv(csv_file), read_ground_truth(truth_file, kind))

    def generate(self, seed):
        return self.data.subsample(self.n, np.random.default_rng(seed)), self.truth

    def as_dict(self):
        return {'kind': self.kind, 'n': self.n, 'rows': self.data.n, 'truth': self.truth.as_dict()}


@dataclass
class RocPoint:
    alpha: float
    trials: int
    confusion: SkeletonConfusion = field(default_factory=SkeletonConfusion)

    @property
    def tpr(self):
        return tpr_fpr(self.confusion)[0]

    @property
    def fpr(self):
        return tpr_fpr(self.confusion)[1]

    def as_row(self):
        c = self.confusion
        return {'alpha': self.alpha, 'trials': self.trials, 'tp': c.tp, 'fp': c.fp,
                'tn': c.tn, 'fn': c.fn, 'tpr': self.tpr, 'fpr': self.fpr}


@dataclass
class RocCurve:
    method: str
    points: List[RocPoint]
    seeds: List[int]
    failures: List[str] = field(default_factory=list)

    def rows(self):
        return [point.as_row() for point in self.points]


def method_config(method, alpha=None, seed=None, circuit=None):
    """
    The PCConfig behind a benchmark method name; `circuit` is the ansatz of
    the quantum methods and is ignored by the Gaussian one
    """
    alpha = Configuration.get_alpha() if alpha is None else alpha
    if method == PC_GAUSSIAN:
        return PCConfig(kernel=KERNEL_GAUSSIAN, alpha=alpha, seed=seed)
    if method == QPC_DEFAULT:
        return PCConfig(kernel=KERNEL_QUANTUM, alpha=alpha, circuit=circuit, seed=seed)
    if method == QPC_OPTIMIZED:
        return PCConfig(kernel=KERNEL_QUANTUM, alpha=alpha, circuit=circuit, optimize=True, seed=seed)
    raise InputDataError(f"unknown method {method!r}, expected one of {METHODS}")


def trial_seeds(seed, trials):
    """
    One independent seed per trial, spawned from the run seed
    """
    if trials < 1:
        raise InputDataError(f"trials must be at least 1, got {trials}")
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(child.generate_state(1)[0]) for child in children]


def _prepared_tester(data, config):
    """
    Standardize and tune once per dataset; the tester and its kernel cache
    are then shared by every significance level
    """
    if config.standardize:
        data = standardize(data)
    family, _ = tune_family(data, config)
    return data, KernelCITester(data, family, config.epsilon, config.null, config.null_draws, config.seed)


def run_trial(generator, method, alphas, trial, seed, circuit=None):
    """
    One dataset, PC at every level of `alphas`.
    Returns a list of (confusion, markov-equivalent) per alpha
    """
    alpha = None
    try:
        dataset, truth = generator.generate(seed)
        truth_graph = truth.to_graph()
        config = method_config(method, alphas[0], seed, circuit)
        data, tester = _prepared_tester(dataset, config)
        outcomes = []
        for alpha in alphas:
            config.alpha = alpha
            config.standardize = False
            cpdag, _, _ = run_pc(data, config, tester=tester)
            outcomes.append((skeleton_confusion(cpdag, truth_graph), markov_accuracy(cpdag, truth_graph)))
        return outcomes
    except Exception as e:
        raise TrialError(alpha, trial, e) from e


def _run_trials(generator, method, alphas, trials, seed, jobs, circuit=None):
    seeds = trial_seeds(seed, trials)
    tasks = [lambda t=t, s=s: run_trial(generator, method, alphas, t, s, circuit) for t, s in enumerate(seeds)]
    outcomes = run_tasks(tasks, jobs)
    failures = []
    for outcome in outcomes:
        if isinstance(outcome, Exception):
            logger.warning("%s: %s", method, outcome)
            failures.append(str(outcome))
    return seeds, outcomes, failures


def roc_sweep(generator, method, alphas=None, trials=10, seed=None, jobs=None, circuit=None):
    """
    Pool the skeleton confusion of `trials` seeded datasets at every alpha.
    The same datasets are reused across alphas; failed trials are left out of the pool
    """
    alphas = Configuration.get_roc_alphas() if alphas is None else list(alphas)
    if not alphas:
        raise InputDataError("the significance set is empty")
    for alpha in alphas:
        if not 0 < alpha < 1:
            raise InputDataError(f"alpha must lie in (0, 1), got {alpha}")
    seeds, outcomes, failures = _run_trials(generator, method, alphas, trials, seed, jobs, circuit)
    points = []
    for k, alpha in enumerate(alphas):
        pooled, done = SkeletonConfusion(), 0
        for outcome in outcomes:
            if isinstance(outcome, Exception):
                continue
            pooled = pooled + outcome[k][0]
            done += 1
        points.append(RocPoint(alpha, done, pooled))
    return RocCurve(method, points, seeds, failures)


def accuracy_cell(generator, method, alpha=None, trials=10, seed=None, jobs=None, circuit=None):
    """
    The fraction of trials whose CPDAG is the true equivalence class, and its standard error.
    Returns a row of the accuracy grid with the trial seeds
    """
    alpha = Configuration.get_alpha() if alpha is None else alpha
    seeds, outcomes, failures = _run_trials(generator, method, [alpha], trials, seed, jobs, circuit)
    hits = [float(outcome[0][1]) for outcome in outcomes if not isinstance(outcome, Exception)]
    accuracy = float(np.mean(hits)) if hits else None
    stderr = float(np.std(hits, ddof=1) / np.sqrt(len(hits))) if len(hits) > 1 else None
    return {'kind': generator.kind, 'n': generator.n, 'method': method, 'trials': len(hits),
            'accuracy': accuracy, 'stderr': stderr, 'seeds': seeds, 'failures': failures}


def junction_generators(kinds, sizes, noise_ratio=DEFAULT_NOISE, relation=NONLINEAR, quantum=False):
    return [GeneratorConfig(kind, n, noise_ratio, relation, quantum) for kind in kinds for n in sizes]


def accuracy_rows(generators, methods=METHODS, alpha=None, trials=10, seed=None, jobs=None, circuit=None):
    """
    One accuracy row per (generator, method); every method sees the same datasets of a generator
    """
    rows = []
    for generator in generators:
        for method in methods:
            row = accuracy_cell(generator, method, alpha, trials, seed, jobs, circuit)
            logger.info("%s n=%d %s: accuracy %s over %d trials",
                        generator.kind, generator.n, method, row['accuracy'], row['trials'])
            rows.append(row)
    return rows


def accuracy_grid(kinds, sizes, methods=METHODS, alpha=None, trials=10, seed=None, jobs=None,
                  noise_ratio=DEFAULT_NOISE, relation=NONLINEAR, quantum=False, circuit=None):
    return accuracy_rows(junction_generators(kinds, sizes, noise_ratio, relation, quantum),
                         methods, alpha, trials, seed, jobs, circuit)


def accuracy_by_method(rows):
    """
    The accuracy grid pivoted to one row per (kind, n) and one column per method
    """
    frame = pd.DataFrame(rows, columns=ACCURACY_COLUMNS)
    methods = list(dict.fromkeys(frame['method']))
    table = frame.pivot(index=['kind', 'n'], columns='method', values='accuracy')
    return table.reindex(columns=methods).reset_index().rename_axis(columns=None)


def write_roc_csv(curve, file_name):
    return write_csv(curve.rows(), file_name, columns=ROC_COLUMNS)


def write_accuracy_csv(rows, file_name):
    """
    The long format, one row per (kind, n, method) with its trial count and
    standard error; accuracy_by_method gives the method-by-column table
    """
    return write_csv(rows, file_name, columns=ACCURACY_COLUMNS)


def write_accuracy_table_csv(rows, file_name):
    accuracy_by_method(rows).to_csv(file_name, index=False, na_rep='')
    return file_name
