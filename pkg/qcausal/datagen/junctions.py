# Synthetic three-variable junctions over (X, Y, Z): the classical recipes and
# the variant whose sources are measurements of a quantum circuit
import json
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from qcausal.configuration import Configuration
from qcausal.core.dataset import Dataset
from qcausal.core.graph import MixedGraph
from qcausal.exceptions import CyclicGraphError, InputDataError, SizeError, UnknownJunctionError
from qcausal.qsim.circuit import CircuitSpec
from qcausal.qsim.emulator import prepare_states
from qcausal.qsim.observable import measure_observable

logger = logging.getLogger(__name__)

COLLIDER = 'collider'
FORK = 'fork'
CHAIN = 'chain'
INDEPENDENT = 'independent'
JUNCTION_KINDS = (COLLIDER, FORK, CHAIN, INDEPENDENT)

NONLINEAR = 'nonlinear'
LINEAR = 'linear'
RELATIONS = (NONLINEAR, LINEAR)

LABELS = ['X', 'Y', 'Z']
MIN_ROWS = 10
DEFAULT_NOISE = 0.05
# Gaussian inputs are clipped to +-3 sigma and mapped onto [0, pi]
INPUT_CLIP = 3.0

# the ground-truth edges each recipe's functional dependencies imply
_EDGES = {
    NONLINEAR: {
        COLLIDER: [('Z', 'X'), ('Y', 'X')],
        CHAIN: [('Z', 'Y'), ('Y', 'X')],
        FORK: [('X', 'Z'), ('X', 'Y')],
        INDEPENDENT: [],
    },
    LINEAR: {
        COLLIDER: [('X', 'Z'), ('Y', 'Z')],
        CHAIN: [('X', 'Z'), ('Z', 'Y')],
        FORK: [('Z', 'X'), ('Z', 'Y')],
        INDEPENDENT: [],
    },
}


@dataclass(frozen=True)
class GroundTruth:
    kind: str
    relation: str
    edges: List[Tuple[str, str]]
    labels: Tuple[str, ...] = tuple(LABELS)

    def to_graph(self):
        index = {label: i for i, label in enumerate(self.labels)}
        return MixedGraph(self.labels, directed=[(index[a], index[b]) for a, b in self.edges])

    def as_dict(self):
        return {'kind': self.kind, 'relation': self.relation, 'nodes': list(self.labels),
                'edges': [list(edge) for edge in self.edges]}


def check_kind(kind, relation=NONLINEAR):
    if kind not in JUNCTION_KINDS:
        raise UnknownJunctionError(f"unknown junction kind {kind!r}, expected one of {JUNCTION_KINDS}")
    if relation not in RELATIONS:
        raise InputDataError(f"relation must be one of {RELATIONS}, got {relation!r}")


def ground_truth(kind, relation=NONLINEAR):
    check_kind(kind, relation)
    return GroundTruth(kind, relation, list(_EDGES[relation][kind]))


def read_ground_truth(file_name, kind=None):
    """
    Load a DAG in the format gen-data writes: {"nodes": [...], "edges": [[from, to], ...]};
    kind and relation are optional
    """
    try:
        with open(file_name, 'r', encoding='utf-8') as fp:
            truth = json.load(fp)
    except FileNotFoundError:
        raise InputDataError(f"ground truth file not found: {file_name}")
    except json.JSONDecodeError as e:
        raise InputDataError(f"{file_name} is not valid JSON: {e}")
    if not isinstance(truth, dict) or 'nodes' not in truth or 'edges' not in truth:
        raise InputDataError(f"{file_name} must hold an object with 'nodes' and 'edges'")
    labels = tuple(str(node) for node in truth['nodes'])
    if len(set(labels)) != len(labels):
        raise InputDataError(f"{file_name}: node names are duplicated")
    edges = []
    for edge in truth['edges']:
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise InputDataError(f"{file_name}: an edge must be a [from, to] pair, got {edge!r}")
        a, b = str(edge[0]), str(edge[1])
        if a not in labels or b not in labels:
            raise InputDataError(f"{file_name}: edge {a} -> {b} names an unknown node")
        edges.append((a, b))
    result = GroundTruth(truth.get('kind', kind or 'custom'), truth.get('relation'), edges, labels)
    try:
        acyclic = result.to_graph().is_acyclic()
    except ValueError as e:
        # self-loops and opposite edges
        raise CyclicGraphError(f"{file_name}: {e}")
    if not acyclic:
        raise CyclicGraphError(f"{file_name}: the ground truth has a directed cycle")
    return result


def _noisy(signal, noise_ratio, rng):
    """
    signal + N(0, (noise_ratio * std(signal))^2), std with the n - 1 denominator
    """
    scale = noise_ratio * float(np.std(signal, ddof=1))
    return signal + rng.normal(0.0, scale, size=signal.shape)


def _compose(kind, relation, sources, noise_ratio, rng):
    """
    Evaluate the recipe in dependency order from the exogenous `sources`
    (three columns s1, s2, s3); returns the (n, 3) matrix of X, Y, Z
    """
    s1, s2, s3 = sources[:, 0], sources[:, 1], sources[:, 2]
    if kind == INDEPENDENT:
        x, y, z = s1, s2, s3
    elif relation == NONLINEAR:
        if kind == COLLIDER:
            z = s1
            y = s2 ** 2
            x = _noisy((z + y) / 2, noise_ratio, rng)
        elif kind == CHAIN:
            z = (s1 + s2) / 2
            y = _noisy(0.5 * z, noise_ratio, rng)
            x = _noisy(y ** 2, noise_ratio, rng)
        else:
            x = (s1 + s2) / 2
            z = _noisy(0.5 * x, noise_ratio, rng)
            y = _noisy(x ** 2, noise_ratio, rng)
    else:
        if kind == COLLIDER:
            x, y = s1, s2
            z = _noisy(x + y, noise_ratio, rng)
        elif kind == CHAIN:
            x = s1
            z = _noisy(x, noise_ratio, rng)
            y = _noisy(z, noise_ratio, rng)
        else:
            z = s1
            x = _noisy(z, noise_ratio, rng)
            y = _noisy(z, noise_ratio, rng)
    return np.column_stack([x, y, z])


def _check_size(n, noise_ratio):
    if n < MIN_ROWS:
        raise SizeError(f"a junction needs n >= {MIN_ROWS} rows, got {n}")
    if not noise_ratio >= 0:
        raise InputDataError(f"noise ratio must be non-negative, got {noise_ratio}")


def gen_junction(kind, n, noise_ratio=DEFAULT_NOISE, seed=None, relation=NONLINEAR):
    """
    Sources are independent standard normals. Returns (Dataset, GroundTruth)
    """
    check_kind(kind, relation)
    _check_size(n, noise_ratio)
    rng = np.random.default_rng(seed)
    sources = rng.standard_normal((n, 3))
    values = _compose(kind, relation, sources, noise_ratio, rng)
    return Dataset(values, LABELS), ground_truth(kind, relation)


def resolve_generator_spec(spec=None):
    if spec is None:
        return CircuitSpec.from_dict(Configuration.get_generator_ansatz())
    if isinstance(spec, dict):
        return CircuitSpec.from_dict(spec)
    return spec


def to_angles(gaussian):
    """
    Affine map of the clipped +-3 sigma range onto [0, pi]
    """
    clipped = np.clip(gaussian, -INPUT_CLIP, INPUT_CLIP)
    return (clipped + INPUT_CLIP) / (2 * INPUT_CLIP) * np.pi


def measure_generator(angles, spec=None):
    """
    The (n, 2) measurement stage: O_x on qubit 0 and O_z on the last qubit, both in [0, 1]
    """
    spec = resolve_generator_spec(spec)
    state = prepare_states(spec, angles)
    first = np.atleast_1d(measure_observable(state, 0, 'x'))
    second = np.atleast_1d(measure_observable(state, spec.n_qubits - 1, 'z'))
    return np.column_stack([first, second])


def gen_quantum_junction(kind, n, generator_spec=None, seed=None, noise_ratio=DEFAULT_NOISE,
                         relation=NONLINEAR):
    """
    Like gen_junction, with sources measured on the generator circuit fed by
    Gaussian inputs. The two observables of one run are entangled, so every
    source is taken from its own batch of inputs to keep the sources independent.
    """
    check_kind(kind, relation)
    _check_size(n, noise_ratio)
    spec = resolve_generator_spec(generator_spec)
    rng = np.random.default_rng(seed)
    batches = [measure_generator(to_angles(rng.standard_normal((n, 2))), spec) for _ in range(3)]
    sources = np.column_stack([batches[0][:, 0], batches[1][:, 1], batches[2][:, 0]])
    values = _compose(kind, relation, sources, noise_ratio, rng)
    logger.debug("quantum %s junction: %d rows from %s", kind, n, spec)
    return Dataset(values, LABELS), ground_truth(kind, relation)
