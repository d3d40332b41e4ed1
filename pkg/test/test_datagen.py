import json

import numpy as np
import pytest
from scipy import stats

from qcausal.core.dataset import Dataset
from qcausal.datagen.junctions import (CHAIN, COLLIDER, FORK, INDEPENDENT,
                                       JUNCTION_KINDS, LINEAR, NONLINEAR,
                                       gen_junction, gen_quantum_junction,
                                       ground_truth, measure_generator,
                                       read_ground_truth, to_angles)
from qcausal.datagen.standardize import standardize
from qcausal.evaluation.cpdag import dag_to_cpdag
from qcausal.exceptions import (CyclicGraphError, DegenerateDataError,
                                InputDataError, SizeError, UnknownJunctionError)


@pytest.mark.parametrize('relation', [NONLINEAR, LINEAR])
@pytest.mark.parametrize('kind', JUNCTION_KINDS)
def test_gen_junction_is_seeded(kind, relation):
    first, truth = gen_junction(kind, 50, seed=7, relation=relation)
    second, _ = gen_junction(kind, 50, seed=7, relation=relation)
    other, _ = gen_junction(kind, 50, seed=8, relation=relation)
    assert first.columns == ['X', 'Y', 'Z']
    assert first.values.shape == (50, 3)
    assert np.array_equal(first.values, second.values)
    assert not np.array_equal(first.values, other.values)
    assert truth.kind == kind and truth.relation == relation


@pytest.mark.parametrize('kind, relation, edges', [
    (COLLIDER, NONLINEAR, [('Z', 'X'), ('Y', 'X')]),
    (CHAIN, NONLINEAR, [('Z', 'Y'), ('Y', 'X')]),
    (FORK, NONLINEAR, [('X', 'Z'), ('X', 'Y')]),
    (COLLIDER, LINEAR, [('X', 'Z'), ('Y', 'Z')]),
    (CHAIN, LINEAR, [('X', 'Z'), ('Z', 'Y')]),
    (FORK, LINEAR, [('Z', 'X'), ('Z', 'Y')]),
    (INDEPENDENT, LINEAR, []),
])
def test_ground_truth(kind, relation, edges):
    truth = ground_truth(kind, relation)
    assert truth.edges == edges
    assert truth.to_graph().is_acyclic()


def test_fork_and_chain_share_a_cpdag():
    for relation in (NONLINEAR, LINEAR):
        fork = dag_to_cpdag(ground_truth(FORK, relation).to_graph())
        chain = dag_to_cpdag(ground_truth(CHAIN, relation).to_graph())
        assert fork.skeleton() == fork, 'no arrow survives in a chain or fork class'
        if relation == LINEAR:
            assert fork == chain


def test_noise_free_recipes():
    data, _ = gen_junction(COLLIDER, 30, noise_ratio=0.0, seed=1)
    x, y, z = data.values.T
    assert np.allclose(x, (z + y) / 2)
    assert np.all(y >= 0.0), 'y is a square'
    data, _ = gen_junction(CHAIN, 30, noise_ratio=0.0, seed=1)
    x, y, z = data.values.T
    assert np.allclose(y, 0.5 * z) and np.allclose(x, y ** 2)
    data, _ = gen_junction(COLLIDER, 30, noise_ratio=0.0, seed=1, relation=LINEAR)
    x, y, z = data.values.T
    assert np.allclose(z, x + y)


def test_noise_scales_with_signal():
    clean, _ = gen_junction(FORK, 2000, noise_ratio=0.0, seed=3, relation=LINEAR)
    noisy, _ = gen_junction(FORK, 2000, noise_ratio=0.5, seed=3, relation=LINEAR)
    residual = noisy.values[:, 0] - noisy.values[:, 2]
    assert np.std(residual) == pytest.approx(0.5 * np.std(noisy.values[:, 2], ddof=1), rel=0.1)
    assert np.allclose(clean.values[:, 0], clean.values[:, 2])


@pytest.mark.parametrize('kwargs, error', [
    ({'kind': 'bogus', 'n': 50}, UnknownJunctionError),
    ({'kind': COLLIDER, 'n': 9}, SizeError),
    ({'kind': COLLIDER, 'n': 50, 'noise_ratio': -0.1}, InputDataError),
    ({'kind': COLLIDER, 'n': 50, 'relation': 'cubic'}, InputDataError),
])
def test_gen_junction_errors(kwargs, error):
    with pytest.raises(error):
        gen_junction(**kwargs)


def test_to_angles():
    angles = to_angles(np.array([-10.0, -3.0, 0.0, 3.0, 10.0]))
    assert np.allclose(angles, [0.0, 0.0, np.pi / 2, np.pi, np.pi])


def test_measure_generator():
    angles = np.array([[0.2, 1.0], [1.5, 2.5]])
    out = measure_generator(angles)
    x1, x2 = angles.T
    assert out.shape == (2, 2)
    assert np.allclose(out[:, 0], (np.cos(x1) * np.cos(x2) + 1) / 2)
    assert np.allclose(out[:, 1], (np.sin(x1) * np.sin(x2) + 1) / 2)


@pytest.mark.parametrize('kind', JUNCTION_KINDS)
def test_gen_quantum_junction(kind):
    data, truth = gen_quantum_junction(kind, 40, seed=2)
    again, _ = gen_quantum_junction(kind, 40, seed=2)
    assert isinstance(data, Dataset) and data.values.shape == (40, 3)
    assert np.array_equal(data.values, again.values)
    assert truth == ground_truth(kind)


def test_quantum_sources_are_measurements():
    data, _ = gen_quantum_junction(INDEPENDENT, 200, seed=4)
    assert np.all((data.values >= 0.0) & (data.values <= 1.0))
    corr = np.corrcoef(data.values.T)
    assert np.max(np.abs(corr[np.triu_indices(3, 1)])) < 0.3, f'sources look dependent:\n{corr}'


def test_quantum_junction_with_custom_generator():
    spec = {'n_qubits': 3, 'init': 'H', 'embedding': 'RXRZ', 'entangler_gate': 'CZ',
            'entangler_topology': 'circ', 'depth': 2, 'scaling': 1.0}
    data, _ = gen_quantum_junction(COLLIDER, 20, generator_spec=spec, seed=0)
    assert data.values.shape == (20, 3)


def test_standardize():
    rng = np.random.default_rng(0)
    data = standardize(Dataset(rng.normal(5.0, 3.0, size=(40, 2)), ['a', 'b']))
    assert np.allclose(data.values.mean(axis=0), 0.0)
    assert np.allclose(data.values.std(axis=0, ddof=1), 1.0)
    assert data.columns == ['a', 'b']


def test_standardize_constant_column():
    values = np.column_stack([np.arange(10.0), np.full(10, 4.2)])
    with pytest.raises(DegenerateDataError) as info:
        standardize(Dataset(values, ['ok', 'flat']))
    assert info.value.column == 'flat'
    assert 'flat' in str(info.value)


def test_quantum_sources_are_not_gaussian():
    n = 2000
    data, _ = gen_quantum_junction(INDEPENDENT, n, seed=9)
    excess = stats.kurtosis(data.values[:, 0])
    assert abs(excess) > 3 * np.sqrt(24.0 / n), f'excess kurtosis {excess} looks Gaussian'


def test_read_ground_truth(tmp_path):
    truth = ground_truth(FORK)
    file_name = tmp_path / 'fork_truth.json'
    file_name.write_text(json.dumps({**truth.as_dict(), 'n': 50, 'seed': 1}))
    loaded = read_ground_truth(str(file_name))
    assert loaded == truth
    file_name.write_text(json.dumps({'nodes': ['a', 'b', 'c'], 'edges': [['a', 'c'], ['b', 'c']]}))
    custom = read_ground_truth(str(file_name), kind='sachs')
    assert custom.kind == 'sachs' and custom.labels == ('a', 'b', 'c')
    assert custom.to_graph().parents(2) == [0, 1]


@pytest.mark.parametrize('content, error', [
    ({'nodes': ['a', 'b']}, InputDataError),
    ({'nodes': ['a', 'b'], 'edges': [['a', 'd']]}, InputDataError),
    ({'nodes': ['a', 'a'], 'edges': []}, InputDataError),
    ({'nodes': ['a', 'b'], 'edges': [['a']]}, InputDataError),
    ({'nodes': ['a', 'b', 'c'], 'edges': [['a', 'b'], ['b', 'c'], ['c', 'a']]}, CyclicGraphError),
    ({'nodes': ['a', 'b'], 'edges': [['a', 'b'], ['b', 'a']]}, CyclicGraphError),
])
def test_read_ground_truth_errors(tmp_path, content, error):
    file_name = tmp_path / 'truth.json'
    file_name.write_text(json.dumps(content))
    with pytest.raises(error):
        read_ground_truth(str(file_name))
    with pytest.raises(InputDataError):
        read_ground_truth(str(tmp_path / 'missing.json'))
