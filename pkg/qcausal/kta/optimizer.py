# KTA minimization: the bounded scalar search on the scaling parameter gamma
# and the resampling gradient method on per-column Gaussian widths
import json
import logging
from dataclasses import asdict, dataclass, field, fields
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from qcausal.configuration import Configuration
from qcausal.exceptions import InputDataError, NumericError, UnsupportedKernelError
from qcausal.kernels.gaussian import median_heuristic_width
from qcausal.kta.alignment import mean_pairwise_kta
from qcausal.kta.decouple import (DECOUPLE_AUTO, DECOUPLE_MODES,
                                  DECOUPLE_SHUFFLE, decouple, resolve_mode,
                                  shuffle_decouple)
from qcausal.kta.gradient import kta_loss_and_gradient
from qcausal.utils import write_csv

logger = logging.getLogger(__name__)

METHOD_SCALAR = 'scalar_bounded'
METHOD_GRADIENT = 'gradient'
METHODS = (METHOD_SCALAR, METHOD_GRADIENT)


def _default(getter, index=None):
    def factory():
        value = getter()
        return value[index] if index is not None else value
    return factory


@dataclass
class OptimizerConfig:
    """
    method: 'scalar_bounded' searches gamma in `bounds` from `init`;
        'gradient' moves per-column Gaussian widths inside `width_bounds`
    target: stop once f = -log KTA reaches it
    eta, m: the step size and the resampled batch size of the gradient method
    decouple: 'shuffle', 'resample' or 'auto' (shuffle up to the configured size)
    """
    method: str = METHOD_SCALAR
    bounds: Tuple[float, float] = field(default_factory=Configuration.get_scaling_bounds)
    init: float = field(default_factory=Configuration.get_scaling_init)
    target: float = field(default_factory=_default(Configuration.get_gradient_defaults, 3))
    eta: float = field(default_factory=_default(Configuration.get_gradient_defaults, 0))
    m: int = field(default_factory=_default(Configuration.get_gradient_defaults, 1))
    max_iters: int = field(default_factory=_default(Configuration.get_gradient_defaults, 2))
    width_bounds: Tuple[float, float] = (1e-2, 1e2)
    decouple: str = DECOUPLE_AUTO
    seed: Optional[int] = None

    def __post_init__(self):
        self.bounds = tuple(float(b) for b in self.bounds)
        self.width_bounds = tuple(float(b) for b in self.width_bounds)
        if self.method not in METHODS:
            raise InputDataError(f"optimizer method must be one of {METHODS}, got {self.method!r}")
        low, high = self.bounds
        if not 0 < low < self.init < high:
            raise InputDataError(f"optimizer needs 0 < low < init < high, got {self.bounds} and {self.init}")
        if not 0 < self.width_bounds[0] < self.width_bounds[1]:
            raise InputDataError(f"invalid width bounds {self.width_bounds}")
        if not self.eta > 0:
            raise InputDataError(f"eta must be positive, got {self.eta}")
        if self.m < 4:
            raise InputDataError(f"m must be at least 4, got {self.m}")
        if self.max_iters < 1:
            raise InputDataError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.decouple not in DECOUPLE_MODES:
            raise InputDataError(f"decouple must be one of {DECOUPLE_MODES}, got {self.decouple!r}")

    def as_dict(self):
        out = asdict(self)
        out['bounds'] = list(self.bounds)
        out['width_bounds'] = list(self.width_bounds)
        return out

    def to_json(self):
        return json.dumps(self.as_dict(), indent=4)

    @staticmethod
    def from_dict(obj):
        if not isinstance(obj, dict):
            raise InputDataError(f"an optimizer config must be a JSON object, got {type(obj).__name__}")
        known = {f.name for f in fields(OptimizerConfig)}
        unknown = sorted(set(obj) - known)
        if unknown:
            raise InputDataError(f"unknown optimizer config fields: {unknown}")
        return OptimizerConfig(**obj)

    @staticmethod
    def from_json(text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputDataError(f"optimizer config is not valid JSON: {e}")
        return OptimizerConfig.from_dict(obj)


@dataclass
class OptimizationResult:
    """
    params: the optimal gamma (scalar search) or the per-column widths (gradient)
    trace: (iteration, parameter, kta) rows in evaluation order
    """
    method: str
    params: object
    kta_initial: float
    kta_final: float
    trace: List[tuple] = field(default_factory=list)
    converged: bool = True

    def as_dict(self):
        params = self.params
        if isinstance(params, np.ndarray):
            params = params.tolist()
        return {'method': self.method, 'params': params, 'kta_initial': self.kta_initial,
                'kta_final': self.kta_final, 'converged': self.converged, 'evaluations': len(self.trace)}


def write_trace_csv(result, file_name):
    rows = []
    for iteration, param, value in result.trace:
        if isinstance(param, np.ndarray):
            param = ' '.join(f"{p:.10g}" for p in param)
        rows.append({'iteration': iteration, 'gamma': param, 'kta': value})
    return write_csv(rows, file_name, columns=['iteration', 'gamma', 'kta'])


def minimize_kta_scalar(objective, bounds=None, init=None, xatol=None, maxiter=None):
    """
    Minimize objective(gamma) -> KTA over [low, high] with the bounded
    Brent search, then keep the best of the optimum, `init` and both bounds.
    Returns (gamma*, KTA(gamma*), trace).
    """
    if bounds is None:
        bounds = Configuration.get_scaling_bounds()
    if init is None:
        init = Configuration.get_scaling_init()
    default_xatol, default_maxiter = Configuration.get_scalar_tolerance()
    xatol = default_xatol if xatol is None else xatol
    maxiter = default_maxiter if maxiter is None else maxiter
    low, high = bounds
    if not low < high:
        raise InputDataError(f"invalid bounds {bounds}")

    trace = []

    def evaluate(gamma):
        value = float(objective(gamma))
        if not np.isfinite(value):
            raise NumericError(f"KTA objective is not finite at gamma={gamma}")
        trace.append((len(trace), float(gamma), value))
        return value

    initial = evaluate(init)
    result = minimize_scalar(evaluate, bounds=(low, high), method='bounded',
                             options={'xatol': xatol, 'maxiter': maxiter})
    if not result.success:
        logger.warning("scalar KTA search stopped without convergence: %s", result.message)
    candidates = [(float(result.fun), float(result.x)), (initial, float(init)),
                  (evaluate(low), float(low)), (evaluate(high), float(high))]
    best_value, best_gamma = min(candidates)
    return best_gamma, best_value, trace


def optimize_scaling(data, family, config):
    """
    Pick gamma for `family` by minimizing the mean pairwise KTA of the decoupled `data`
    """
    data = np.asarray(data, dtype=float)
    decoupled = decouple(data, config.decouple, config.seed, m=config.m)

    def objective(gamma):
        return mean_pairwise_kta(decoupled, family.with_scaling(gamma)).value

    gamma, value, trace = minimize_kta_scalar(objective, config.bounds, config.init)
    logger.info("scaling %.6g -> %.6g, KTA %.6g -> %.6g", config.init, gamma, trace[0][2], value)
    return OptimizationResult(METHOD_SCALAR, gamma, trace[0][2], value, trace)


def _pair_objective(sample, widths, scaling):
    """
    The mean KTA over column pairs of `sample` and its gradient in the widths
    """
    p = sample.shape[1]
    values = []
    grad = np.zeros(p)
    for a, b in combinations(range(p), 2):
        loss, ga, gb = kta_loss_and_gradient(sample[:, [a]], sample[:, [b]], widths[[a]], widths[[b]], scaling)
        value = np.exp(-loss)
        values.append(value)
        # d KTA = -KTA d f
        grad[a] += -value * ga[0]
        grad[b] += -value * gb[0]
    n_pairs = len(values)
    mean = float(np.mean(values))
    # f = -log(mean KTA), df = -d(mean KTA) / mean KTA
    return mean, -(grad / n_pairs) / mean


def minimize_kta_gradient(data, config, family=None):
    """
    Gradient KTA minimization over per-column Gaussian widths.

    Each iteration draws m decoupled rows (normal resampling from the column
    moments, or a shuffled subsample), evaluates f = -log KTA and moves the
    widths by widths + eta df/dwidths, clipped to the width bounds.

    Minimizing KTA raises f, so `target` is a floor on f rather than a ceiling:
    the loop stops once f >= target, that is once KTA <= exp(-target), or after
    max_iters. The best widths seen are returned.
    """
    if config.method != METHOD_GRADIENT:
        raise InputDataError(f"minimize_kta_gradient needs method '{METHOD_GRADIENT}', got {config.method!r}")
    if family is not None and not getattr(family, 'differentiable', False):
        raise UnsupportedKernelError(f"{family!r} has no analytic parameter derivative")
    scaling = family.scaling if family is not None else 1.0
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise InputDataError("gradient KTA minimization needs at least two columns")
    n, p = data.shape
    low, high = config.width_bounds
    widths = np.array([median_heuristic_width(data[:, [c]]).width for c in range(p)])
    widths = np.clip(widths, low, high)
    mode = resolve_mode(config.decouple, n)
    rng = np.random.default_rng(config.seed)

    trace = []
    best_widths, best_value, initial = widths.copy(), None, None
    converged = False
    for iteration in range(config.max_iters):
        seed = int(rng.integers(2 ** 32))
        if mode == DECOUPLE_SHUFFLE:
            rows = np.sort(np.random.default_rng(seed).choice(n, size=min(config.m, n), replace=False))
            sample = shuffle_decouple(data[rows], seed)
        else:
            sample = decouple(data, mode, seed, m=config.m)
        value, grad = _pair_objective(sample, widths, scaling)
        if not np.isfinite(value) or not np.all(np.isfinite(grad)):
            raise NumericError(f"KTA objective is not finite at iteration {iteration}")
        trace.append((iteration, widths.copy(), value))
        if initial is None:
            initial = value
        if best_value is None or value < best_value:
            best_value, best_widths = value, widths.copy()
        if -np.log(max(value, 1e-300)) >= config.target:
            converged = True
            break
        widths = np.clip(widths + config.eta * grad, low, high)
    if not converged:
        logger.warning("gradient KTA minimization reached %d iterations without f >= %g (best KTA %.6g)",
                       config.max_iters, config.target, best_value)
    return OptimizationResult(METHOD_GRADIENT, best_widths, initial, best_value, trace, converged)
