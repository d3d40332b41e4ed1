import logging
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Tuple

from qcausal.core.graph import MixedGraph, SepsetTable
from qcausal.exceptions import CITestError, InputDataError, QcausalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CITestRecord:
    """
    One CI test performed during skeleton discovery
    """
    level: int
    x: str
    y: str
    cond: Tuple[str, ...]
    statistic: float
    p_value: float
    independent: bool

    def as_row(self):
        row = asdict(self)
        row['cond'] = ' '.join(self.cond)
        return row


def _candidate_sets(adjacency, x, y, size):
    """
    Subsets of adj(x) minus y, then the new ones of adj(y) minus x, lexicographic
    """
    seen = set()
    for a, b in ((x, y), (y, x)):
        for cond in combinations(sorted(adjacency[a] - {b}), size):
            if cond not in seen:
                seen.add(cond)
                yield cond


def skeleton(labels, tester, alpha, max_cond_size=None):
    """
    Level-wise edge removal from the complete graph over `labels`.

    At level s every adjacent pair (x, y), in ascending order, is tested
    against the size-s subsets of its neighbourhood; all tests of a level see
    the adjacency frozen at the start of the level and removals are applied
    afterwards in sorted pair order. Returns (graph, sepsets, test records).
    """
    if not 0 < alpha < 1:
        raise InputDataError(f"alpha must lie in (0, 1), got {alpha}")
    labels = list(labels)
    graph = MixedGraph.complete(labels)
    sepsets = SepsetTable()
    records = []
    level = 0
    while max_cond_size is None or level <= max_cond_size:
        adjacency = {i: set(graph.neighbors(i)) for i in graph.nodes}
        pairs = [(x, y) for x, y in graph.adjacent_pairs()
                 if max(len(adjacency[x]), len(adjacency[y])) - 1 >= level]
        if not pairs:
            break
        removals = []
        for x, y in pairs:
            for cond in _candidate_sets(adjacency, x, y, level):
                try:
                    result = tester.test(x, y, cond, alpha)
                except QcausalError as e:
                    raise CITestError(labels[x], labels[y], [labels[c] for c in cond], e) from e
                records.append(CITestRecord(level, labels[x], labels[y], tuple(labels[c] for c in cond),
                                            result.statistic, result.p_value, result.independent))
                logger.debug("%s _||_ %s | %s: statistic=%.6g p=%.6g", labels[x], labels[y],
                             [labels[c] for c in cond], result.statistic, result.p_value)
                if result.independent:
                    removals.append((x, y, cond))
                    break
        for x, y, cond in sorted(removals):
            graph.remove_edge(x, y)
            sepsets.record(x, y, cond)
            logger.info("removed %s - %s given %s", labels[x], labels[y], [labels[c] for c in cond])
        level += 1
    return graph, sepsets, records
