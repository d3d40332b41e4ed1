# Export a CPDAG as DOT (through graphviz), JSON and the CSV test report
import logging
import re

from graphviz import Digraph

from qcausal.core.edge import EDGE_DIRECTED
from qcausal.utils import write_csv, write_json

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['level', 'x', 'y', 'cond', 'statistic', 'p_value', 'independent']

_PLAIN_ID = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def _quote(name):
    if _PLAIN_ID.match(name):
        return name
    escaped = name.replace('\\', '\\\\').replace('"', '\\"')
    return f'"{escaped}"'


def to_digraph(graph, name='cpdag'):
    """
    Directed edges as `A -> B;`, undirected ones as `A -> B [dir=none];`
    """
    g = Digraph(name)
    g.attr(rankdir='TB')
    for label in graph.labels:
        g.body.append(f'\t{_quote(label)};\n')
    for edge in graph.edges():
        a = _quote(graph.labels[edge.node_from])
        b = _quote(graph.labels[edge.node_to])
        if edge.type == EDGE_DIRECTED:
            g.body.append(f'\t{a} -> {b};\n')
        else:
            g.body.append(f'\t{a} -> {b} [dir=none];\n')
    return g


def write_dot(graph, file_name, render=False):
    g = to_digraph(graph)
    g.save(file_name)
    if render:
        # needs the `dot` binary of Graphviz
        g.render(file_name, view=False)
    else:
        logger.info("DOT written to %s, rendering disabled", file_name)
    return file_name


def cpdag_dict(graph, sepsets=None):
    out = graph.as_dict()
    if sepsets is not None:
        out['sepsets'] = sepsets.as_dict(graph.labels)
    return out


def write_graph_json(graph, file_name, sepsets=None):
    return write_json(cpdag_dict(graph, sepsets), file_name)


def write_report_csv(report, file_name):
    return write_csv(report.test_rows(), file_name, columns=REPORT_COLUMNS)
