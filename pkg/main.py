#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import argparse
from dataclasses import dataclass, field
from datetime import datetime
import json
from os import path
import sys
from typing import List, Optional

import numpy as np

from qcausal.configuration import Configuration
from qcausal.exceptions import (EXIT_NO_TRIAL, EXIT_OK, InputDataError,
                                QcausalError, exit_code_of)


@dataclass
class RunConfig:
    """
    Everything one `discover` run depends on, embedded in its report for replay
    """
    input: str
    output_dir: str
    pc: object
    columns: Optional[List[str]] = None
    subsample: Optional[int] = None
    seed: Optional[int] = None
    command: str = field(default_factory=lambda: " ".join(sys.argv))

    def __post_init__(self):
        if not self.input or not self.output_dir:
            raise InputDataError("input and output paths must be non-empty")
        if self.subsample is not None and self.subsample < 1:
            raise InputDataError(f"--subsample must be positive, got {self.subsample}")

    def as_dict(self):
        return {'command': self.command, 'input': self.input, 'output_dir': self.output_dir,
                'columns': self.columns, 'subsample': self.subsample, 'seed': self.seed,
                'pc': self.pc.as_dict()}


def _list_of(kind):
    def parse(text):
        try:
            return [kind(item.strip()) for item in text.split(',') if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a comma-separated list")
    return parse


def _read_circuit(text):
    """
    --circuit takes inline JSON or the path of a JSON file
    """
    from qcausal.qsim.circuit import CircuitSpec
    if text is None:
        return None
    if path.exists(text):
        with open(text, 'r') as fp:
            text = fp.read()
    return CircuitSpec.from_json(text)


def _start(run_name, verbose):
    from qcausal.utils import init_logging
    Configuration.set_run_name(run_name)
    Configuration.set_start_time(datetime.now().strftime("%Y%m%d%H%M%S%f"))
    init_logging(verbose)


def _write_command(out_dir, extra=None):
    from qcausal.utils import write_json
    command = {"Command": " ".join(sys.argv)}
    if extra:
        command.update(extra)
    write_json(command, path.join(out_dir, 'command.json'))


def do_discover(args):
    from qcausal.core.dataset import Dataset
    from qcausal.kta.optimizer import OptimizerConfig, write_trace_csv
    from qcausal.pc.export import write_dot, write_graph_json, write_report_csv
    from qcausal.pc.run import PCConfig, run_pc
    from qcausal.utils import result_dir, write_json

    _start(args.input, args.verbose)
    pc_config = PCConfig(
        kernel=args.kernel, alpha=args.alpha, epsilon=args.epsilon,
        circuit=_read_circuit(args.circuit), optimize=args.optimize,
        optimizer=OptimizerConfig(method=args.method, decouple=args.decouple),
        max_cond_size=args.max_cond_size, null=args.null, null_draws=args.null_draws,
        seed=args.seed)
    run = RunConfig(args.input, result_dir(), pc_config, args.columns, args.subsample, args.seed)

    dataset = Dataset.read_csv(run.input)
    if run.columns:
        dataset = dataset.select(run.columns)
    if run.subsample:
        dataset = dataset.subsample(run.subsample, np.random.default_rng(run.seed))
    _write_command(run.output_dir)

    cpdag, sepsets, report = run_pc(dataset, pc_config)

    name = Configuration.get_run_name()
    write_dot(cpdag, path.join(run.output_dir, f'{name}.gv'), render=args.render)
    write_graph_json(cpdag, path.join(run.output_dir, f'{name}_cpdag.json'), sepsets)
    write_report_csv(report, path.join(run.output_dir, f'{name}_tests.csv'))
    write_json({'run': run.as_dict(), **report.as_dict()}, path.join(run.output_dir, f'{name}_report.json'))
    if report.optimizer_result is not None:
        write_trace_csv(report.optimizer_result, path.join(run.output_dir, f'{name}_trace.csv'))
    print(f"CPDAG: {cpdag}", flush=True)
    print(f"The results are written in: {run.output_dir}", flush=True)
    return EXIT_OK


def do_gen_data(args):
    from qcausal.datagen.junctions import gen_junction, gen_quantum_junction
    from qcausal.utils import result_dir, write_json

    _start(f'{args.kind}_{args.n}', args.verbose)
    if args.quantum:
        dataset, truth = gen_quantum_junction(args.kind, args.n, _read_circuit(args.circuit),
                                              args.seed, args.noise, args.relation)
    else:
        dataset, truth = gen_junction(args.kind, args.n, args.noise, args.seed, args.relation)

    csv_file = args.output or path.join(result_dir(), f'{Configuration.get_run_name()}.csv')
    truth_file = path.splitext(csv_file)[0] + '_truth.json'
    out_dir = path.dirname(path.abspath(csv_file))
    if not path.isdir(out_dir):
        raise InputDataError(f"output directory does not exist: {out_dir}")
    dataset.to_csv(csv_file)
    write_json({**truth.as_dict(), 'n': args.n, 'seed': args.seed, 'noise_ratio': args.noise,
                'quantum': args.quantum}, truth_file)
    print(f"The data is written in: {csv_file}", flush=True)
    print(f"The ground truth is written in: {truth_file}", flush=True)
    return EXIT_OK


def do_benchmark(args):
    from qcausal.datagen.junctions import check_kind
    from qcausal.evaluation.benchmark import (METHODS, SubsampleGenerator,
                                              accuracy_rows,
                                              junction_generators, roc_sweep,
                                              write_accuracy_csv,
                                              write_accuracy_table_csv,
                                              write_roc_csv)
    from qcausal.utils import result_dir, write_json

    _start('benchmark', args.verbose)
    if args.trials < 1:
        raise InputDataError(f"--trials must be at least 1, got {args.trials}")
    if (args.data is None) != (args.truth is None):
        raise InputDataError("--data and --truth go together")
    for method in args.methods:
        if method not in METHODS:
            raise InputDataError(f"unknown method {method!r}, expected one of {METHODS}")
    if not args.sizes or not args.methods:
        raise InputDataError("--sizes and --methods must not be empty")
    if args.data is None:
        if not args.kinds:
            raise InputDataError("--kinds must not be empty")
        for kind in args.kinds:
            check_kind(kind, args.relation)
        generators = junction_generators(args.kinds, args.sizes, args.noise, args.relation, args.quantum)
    else:
        generators = [SubsampleGenerator.from_files(args.data, args.truth, n) for n in args.sizes]
    circuit = _read_circuit(args.circuit)
    if args.jobs is not None:
        Configuration.set_jobs(args.jobs)
    out_dir = result_dir()
    _write_command(out_dir, {"circuit": circuit.as_dict() if circuit is not None else None,
                             "generators": [generator.as_dict() for generator in generators]})
    empty_cells = []
    seeds = {}
    failures = {}

    if args.sweep in ('accuracy', 'both'):
        rows = accuracy_rows(generators, args.methods, args.alpha, args.trials, args.seed, args.jobs, circuit)
        write_accuracy_csv(rows, path.join(out_dir, 'accuracy.csv'))
        write_accuracy_table_csv(rows, path.join(out_dir, 'accuracy_by_method.csv'))
        for row in rows:
            key = f"accuracy/{row['kind']}/{row['n']}/{row['method']}"
            seeds[key] = row['seeds']
            failures[key] = row['failures']
            if row['trials'] == 0:
                empty_cells.append(f"{row['kind']} n={row['n']} {row['method']}")

    if args.sweep in ('roc', 'both'):
        for generator in generators:
            kind, n = generator.kind, generator.n
            for method in args.methods:
                curve = roc_sweep(generator, method, args.alphas, args.trials, args.seed, args.jobs, circuit)
                write_roc_csv(curve, path.join(out_dir, f'roc_{kind}_{n}_{method}.csv'))
                seeds[f"roc/{kind}/{n}/{method}"] = curve.seeds
                failures[f"roc/{kind}/{n}/{method}"] = curve.failures
                empty_cells.extend(f"{kind} n={n} {method} alpha={point.alpha}"
                                   for point in curve.points if point.trials == 0)

    write_json(seeds, path.join(out_dir, 'seeds.json'))
    write_json(failures, path.join(out_dir, 'failures.json'))
    print(f"The results are written in: {out_dir}", flush=True)
    if empty_cells:
        print(f"Error: no trial succeeded for {', '.join(empty_cells)}", file=sys.stderr)
        return EXIT_NO_TRIAL
    return EXIT_OK


def parse(argv=None):
    from qcausal.datagen.junctions import DEFAULT_NOISE, JUNCTION_KINDS, NONLINEAR, RELATIONS
    from qcausal.evaluation.benchmark import METHODS
    from qcausal.kcit.independence import NULL_GAMMA, NULL_MONTE_CARLO
    from qcausal.kta.decouple import DECOUPLE_AUTO, DECOUPLE_MODES
    from qcausal.kta.optimizer import METHOD_SCALAR, METHODS as OPTIMIZER_METHODS

    parser = argparse.ArgumentParser(
        description='qcausal, kernel-based causal discovery with classical and quantum kernels')
    parser.add_argument(
        '--output-root', default='./output',
        help='where the log and result directories are created')
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '-v', '--verbose', default=None, const='warning', nargs='?',
        choices=['warning', 'info', 'debug'],
        help='set the logging level (QCAUSAL_LOG when not given)')
    common.add_argument('--seed', type=int, default=None, help='seed of every random choice')

    discover = sub.add_parser('discover', parents=[common], help='run (q)PC on a CSV file')
    inputs = discover.add_argument_group('Input arguments')
    inputs.add_argument('-i', '--input', required=True, metavar='CSV',
                        help='comma-separated file whose header names the variables')
    inputs.add_argument('--columns', type=_list_of(str), help='variables to keep, separated by commas (`,`)')
    inputs.add_argument('--subsample', type=int, help='draw this many rows without replacement')

    kernel = discover.add_argument_group('Kernel')
    kernel.add_argument('--kernel', default='gaussian', choices=['gaussian', 'quantum'],
                        help="'gaussian' runs the classical PC, 'quantum' runs qPC")
    kernel.add_argument('--circuit', help='the ansatz as inline JSON or a JSON file')
    kernel.add_argument('--optimize', action='store_true', help='tune the kernel by KTA minimization')
    kernel.add_argument('--method', default=METHOD_SCALAR, choices=OPTIMIZER_METHODS,
                        help='the KTA minimization method')
    kernel.add_argument('--decouple', default=DECOUPLE_AUTO, choices=DECOUPLE_MODES,
                        help='how the dependence is broken before the alignment is minimized')

    tests = discover.add_argument_group('CI tests')
    tests.add_argument('--alpha', type=float, default=Configuration.get_alpha(),
                       help='significance level (0.01 is customary for real data)')
    tests.add_argument('--epsilon', type=float, default=Configuration.get_epsilon(),
                       help='ridge regularization of the conditional test')
    tests.add_argument('--max-cond-size', type=int, default=Configuration.get_max_cond_size(),
                       help='largest conditioning set tried')
    tests.add_argument('--null', default=NULL_GAMMA, choices=[NULL_GAMMA, NULL_MONTE_CARLO],
                       help='how the null distribution is approximated')
    tests.add_argument('--null-draws', type=int, default=None, help='draws of the Monte-Carlo null')
    discover.add_argument('--render', action='store_true', help='render the DOT file (needs Graphviz)')

    gen = sub.add_parser('gen-data', parents=[common], help='generate a junction dataset')
    gen.add_argument('--kind', required=True, help=f'one of {", ".join(JUNCTION_KINDS)}')
    gen.add_argument('--n', type=int, required=True, help='number of rows')
    gen.add_argument('--noise', type=float, default=DEFAULT_NOISE, help='noise ratio')
    gen.add_argument('--relation', default=NONLINEAR, choices=RELATIONS)
    gen.add_argument('--quantum', action='store_true', help='source the variables from circuit measurements')
    gen.add_argument('--circuit', help='the generator ansatz as inline JSON or a JSON file')
    gen.add_argument('-o', '--output', help='CSV path; the ground truth goes next to it')

    bench = sub.add_parser('benchmark', parents=[common], help='accuracy grids and ROC sweeps')
    bench.add_argument('--kinds', type=_list_of(str), default=list(JUNCTION_KINDS))
    bench.add_argument('--sizes', type=_list_of(int), default=[100])
    bench.add_argument('--methods', type=_list_of(str), default=list(METHODS))
    bench.add_argument('--alphas', type=_list_of(float), default=Configuration.get_roc_alphas(),
                       help='the significance set of the ROC sweep')
    bench.add_argument('--alpha', type=float, default=Configuration.get_alpha(),
                       help='significance level of the accuracy grid')
    bench.add_argument('--trials', type=int, default=10)
    bench.add_argument('--sweep', default='accuracy', choices=['accuracy', 'roc', 'both'])
    bench.add_argument('--noise', type=float, default=DEFAULT_NOISE)
    bench.add_argument('--relation', default=NONLINEAR, choices=RELATIONS)
    bench.add_argument('--quantum', action='store_true')
    bench.add_argument('--circuit', help='the ansatz of the qpc methods as inline JSON or a JSON file')
    bench.add_argument('--data', metavar='CSV',
                       help='subsample this dataset instead of generating junctions; --sizes are the subsample sizes')
    bench.add_argument('--truth', metavar='JSON', help='the DAG of --data, in the gen-data truth format')
    bench.add_argument('--jobs', type=int, default=None, help='worker threads (all cores by default)')

    args = parser.parse_args(argv)
    return args


COMMANDS = {
    'discover': do_discover,
    'gen-data': do_gen_data,
    'benchmark': do_benchmark,
}


def main(argv=None):
    args = parse(argv)
    Configuration.set_output_root(args.output_root)

    job_start_time = datetime.now()
    current_time_start = job_start_time.strftime("%Y-%m-%d %H:%M:%S_%f")
    print(f"Start to analyze: {current_time_start}", flush=True)
    print(f"Running...", flush=True)

    try:
        code = COMMANDS[args.command](args)
    except QcausalError as e:
        print(f"Error: {e}", file=sys.stderr)
        return exit_code_of(e)

    print(f"Finished.", flush=True)
    job_end_time = datetime.now()
    current_time_end = job_end_time.strftime("%Y-%m-%d %H:%M:%S_%f")
    print(f"End of analyze: {current_time_end}", flush=True)
    elapsed_time = job_end_time - job_start_time
    print(f"Time elapsed: {elapsed_time}", flush=True)
    return code


if __name__ == '__main__':
    sys.exit(main())
