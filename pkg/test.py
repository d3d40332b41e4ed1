import glob
import json
import os
import subprocess
import sys

import pytest


def run_main(output_root, *args, timeout=300):
    cmd = [sys.executable, 'main.py', '--output-root', str(output_root), *args]
    return subprocess.run(cmd, timeout=timeout, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                          cwd=os.path.dirname(os.path.abspath(__file__)))


def describe(proc):
    return f'stdout: {proc.stdout.decode("utf-8")}\nstderr: {proc.stderr.decode("utf-8")}'


def gen_data(tmp_path, csv_name, *args):
    csv_file = str(tmp_path / csv_name)
    proc = run_main(tmp_path / 'output', 'gen-data', '-o', csv_file, *args)
    assert proc.returncode == 0, f'return code should be 0\n{describe(proc)}'
    return csv_file


def test_gen_data_is_deterministic(tmp_path):
    first = gen_data(tmp_path, 'a.csv', '--kind', 'collider', '--n', '50', '--seed', '3')
    second = gen_data(tmp_path, 'b.csv', '--kind', 'collider', '--n', '50', '--seed', '3')
    with open(first) as fa, open(second) as fb:
        assert fa.read() == fb.read(), 'the same seed should give the same file'
    with open(str(tmp_path / 'a_truth.json')) as fp:
        truth = json.load(fp)
    assert truth['kind'] == 'collider' and truth['nodes'] == ['X', 'Y', 'Z']
    assert truth['seed'] == 3


def test_gen_data_in_result_dir(tmp_path):
    proc = run_main(tmp_path, 'gen-data', '--kind', 'fork', '--n', '20', '--quantum', '--seed', '1')
    assert proc.returncode == 0, describe(proc)
    assert len(glob.glob(f'{tmp_path}/result/fork_20_*/fork_20.csv')) == 1
    assert len(glob.glob(f'{tmp_path}/log/fork_20_*.log')) == 1


def test_unknown_junction_kind(tmp_path):
    proc = run_main(tmp_path, 'gen-data', '--kind', 'bogus', '--n', '50')
    assert proc.returncode == 2, 'return code should be 2'
    assert 'unknown junction kind' in proc.stderr.decode('utf-8')


def test_missing_input_file(tmp_path):
    missing = str(tmp_path / 'missing.csv')
    proc = run_main(tmp_path, 'discover', '-i', missing)
    assert proc.returncode == 2, 'return code should be 2'
    assert missing in proc.stderr.decode('utf-8'), 'the path should be reported'


def test_non_numeric_cell(tmp_path):
    csv_file = tmp_path / 'bad.csv'
    csv_file.write_text('x,y\n1,2\n3,oops\n')
    proc = run_main(tmp_path, 'discover', '-i', str(csv_file))
    assert proc.returncode == 2, 'return code should be 2'
    stderr = proc.stderr.decode('utf-8')
    assert 'row 3' in stderr and "column 'y'" in stderr, stderr


def test_constant_column(tmp_path):
    csv_file = tmp_path / 'flat.csv'
    csv_file.write_text('x,y,c\n' + ''.join(f'{i},{i * i % 7},1\n' for i in range(20)))
    proc = run_main(tmp_path, 'discover', '-i', str(csv_file))
    assert proc.returncode == 3, f'return code should be 3\n{describe(proc)}'
    assert "'c'" in proc.stderr.decode('utf-8')


def test_discover(tmp_path):
    csv_file = gen_data(tmp_path, 'chain.csv', '--kind', 'chain', '--n', '80', '--seed', '0')
    proc = run_main(tmp_path / 'output', 'discover', '-i', csv_file, '--seed', '0', '-v', 'info')
    assert proc.returncode == 0, describe(proc)
    result_dir = glob.glob(f'{tmp_path}/output/result/chain_*')
    assert len(result_dir) == 1, 'should have only one result directory'
    result_dir = result_dir[0]
    for name in ['chain.gv', 'chain_cpdag.json', 'chain_tests.csv', 'chain_report.json', 'command.json']:
        assert os.path.exists(os.path.join(result_dir, name)), f'{name} is missing'
    with open(os.path.join(result_dir, 'chain_report.json')) as fp:
        report = json.load(fp)
    assert report['run']['input'] == csv_file
    assert report['config']['kernel'] == 'gaussian'


def test_discover_quantum_optimized(tmp_path):
    csv_file = gen_data(tmp_path, 'collider.csv', '--kind', 'collider', '--n', '40', '--seed', '2')
    proc = run_main(tmp_path / 'output', 'discover', '-i', csv_file, '--kernel', 'quantum',
                    '--optimize', '--alpha', '0.01', '--seed', '2')
    assert proc.returncode == 0, describe(proc)
    trace = glob.glob(f'{tmp_path}/output/result/collider_*/collider_trace.csv')
    assert len(trace) == 1, 'the optimizer trace should be written'


def test_discover_selects_columns(tmp_path):
    csv_file = gen_data(tmp_path, 'fork.csv', '--kind', 'fork', '--n', '60', '--seed', '4')
    proc = run_main(tmp_path / 'output', 'discover', '-i', csv_file, '--columns', 'X,Z', '--subsample', '40')
    assert proc.returncode == 0, describe(proc)
    with open(glob.glob(f'{tmp_path}/output/result/fork_*/fork_cpdag.json')[0]) as fp:
        assert json.load(fp)['nodes'] == ['X', 'Z']


@pytest.mark.parametrize('args', [
    ['--trials', '0'],
    ['--kinds', 'bogus'],
    ['--methods', 'fci'],
])
def test_benchmark_rejects_arguments(tmp_path, args):
    proc = run_main(tmp_path, 'benchmark', *args)
    assert proc.returncode == 2, f'return code should be 2\n{describe(proc)}'


def test_small_benchmark(tmp_path):
    proc = run_main(tmp_path, 'benchmark', '--kinds', 'collider', '--sizes', '30', '--methods', 'pc-gaussian',
                    '--alphas', '0.5,0.05', '--trials', '2', '--sweep', 'both', '--seed', '1', '--jobs', '2')
    assert proc.returncode == 0, describe(proc)
    result_dir = glob.glob(f'{tmp_path}/result/benchmark_*')
    assert len(result_dir) == 1
    result_dir = result_dir[0]
    with open(os.path.join(result_dir, 'accuracy.csv')) as fp:
        assert fp.readline().strip() == 'kind,n,method,trials,accuracy,stderr'
    with open(os.path.join(result_dir, 'roc_collider_30_pc-gaussian.csv')) as fp:
        assert len(fp.read().splitlines()) == 3
    with open(os.path.join(result_dir, 'seeds.json')) as fp:
        assert json.load(fp)
    with open(os.path.join(result_dir, 'accuracy_by_method.csv')) as fp:
        assert fp.readline().strip() == 'kind,n,pc-gaussian'
    with open(os.path.join(result_dir, 'failures.json')) as fp:
        assert json.load(fp)['accuracy/collider/30/pc-gaussian'] == []


def test_benchmark_without_successful_trial(tmp_path):
    proc = run_main(tmp_path, 'benchmark', '--kinds', 'collider', '--sizes', '5', '--methods', 'pc-gaussian',
                    '--trials', '1')
    assert proc.returncode == 4, f'return code should be 4\n{describe(proc)}'
    assert 'no trial succeeded' in proc.stderr.decode('utf-8')
    with open(glob.glob(f'{tmp_path}/result/benchmark_*/failures.json')[0]) as fp:
        failures = json.load(fp)['accuracy/collider/5/pc-gaussian']
    assert len(failures) == 1 and 'trial 0' in failures[0], failures


def test_benchmark_on_a_dataset_with_circuit(tmp_path):
    csv_file = gen_data(tmp_path, 'collider.csv', '--kind', 'collider', '--n', '120', '--seed', '6')
    truth_file = str(tmp_path / 'collider_truth.json')
    circuit = '{"depth": 1, "entangler_topology": "circ"}'
    proc = run_main(tmp_path / 'output', 'benchmark', '--data', csv_file, '--truth', truth_file,
                    '--sizes', '40', '--methods', 'qpc-default', '--circuit', circuit,
                    '--trials', '2', '--seed', '0', '--jobs', '1')
    assert proc.returncode == 0, describe(proc)
    result_dir = glob.glob(f'{tmp_path}/output/result/benchmark_*')[0]
    with open(os.path.join(result_dir, 'command.json')) as fp:
        command = json.load(fp)
    assert command['circuit']['depth'] == 1 and command['circuit']['entangler_topology'] == 'circ'
    assert command['generators'][0]['kind'] == 'collider' and command['generators'][0]['rows'] == 120
    with open(os.path.join(result_dir, 'accuracy.csv')) as fp:
        assert fp.read().splitlines()[1].startswith('collider,40,qpc-default,2,')


@pytest.mark.parametrize('args', [
    ['--data', 'x.csv'],
    ['--circuit', '{"layers": 2}'],
])
def test_benchmark_rejects_dataset_arguments(tmp_path, args):
    proc = run_main(tmp_path, 'benchmark', '--kinds', 'collider', '--sizes', '20', '--trials', '1', *args)
    assert proc.returncode == 2, f'return code should be 2\n{describe(proc)}'
