# This file gives some practical functions that will be adopted by other files

import json
import logging
import os
from os import makedirs, path

import numpy as np
import pandas as pd

from qcausal.configuration import Configuration

LOG_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
}


def init_logging(verbose_flag=None):
    """
    Config the root logger: a log file under ./output/log and a console logger (warning level).

    The level is taken from `verbose_flag`, then from QCAUSAL_LOG, then from the Configuration.
    """
    if verbose_flag is None:
        verbose_flag = os.environ.get('QCAUSAL_LOG', Configuration.get_verbose_flag())
    verbose_flag = verbose_flag.lower()
    if verbose_flag not in LOG_LEVELS:
        verbose_flag = 'warning'
    Configuration.set_verbose_flag(verbose_flag)

    log_dir = path.join(Configuration.get_output_root(), 'log')
    makedirs(log_dir, exist_ok=True)
    # reset handlers so that repeated calls in one process do not stack them
    root = logging.getLogger('')
    for handler in list(root.handlers):
        root.removeHandler(handler)

    logging_config = {
        'filename': path.join(log_dir, f'{Configuration.get_run_name()}_{Configuration.get_start_time()}.log'),
        'filemode': 'w+',
        'format': '%(asctime)s | %(levelname)s | %(message)s',
        'level': LOG_LEVELS[verbose_flag],
    }
    logging.basicConfig(**logging_config)

    # add console logger (warning level)
    console = logging.StreamHandler()
    console.setLevel(logging.WARNING)
    formatter = logging.Formatter('%(levelname)s: %(message)s')
    console.setFormatter(formatter)
    root.addHandler(console)


def result_dir():
    """
    The directory of the current run, i.e., ./output/result/<run name>_<start time>
    """
    dir_name = path.join(Configuration.get_output_root(), 'result',
                         f"{Configuration.get_run_name()}_{Configuration.get_start_time()}")
    makedirs(dir_name, exist_ok=True)
    return dir_name


def _to_jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"{type(obj)} is not JSON serializable")


def write_json(obj, file_name):
    makedirs(path.dirname(path.abspath(file_name)), exist_ok=True)
    with open(file_name, 'w') as fp:
        json.dump(obj, fp, indent=4, default=_to_jsonable)
    return file_name


def write_csv(rows, file_name, columns=None):
    """
    Write a list of dicts as CSV. Missing values (None / NaN) become empty cells
    """
    makedirs(path.dirname(path.abspath(file_name)), exist_ok=True)
    pd.DataFrame(rows, columns=columns).to_csv(file_name, index=False, na_rep='')
    return file_name
