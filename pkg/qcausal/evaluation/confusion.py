from dataclasses import dataclass
from itertools import combinations

from qcausal.exceptions import NodeMismatchError


@dataclass(frozen=True)
class SkeletonConfusion:
    """
    Adjacency confusion counts over the p(p-1)/2 unordered pairs
    """
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self):
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other):
        return SkeletonConfusion(self.tp + other.tp, self.fp + other.fp,
                                 self.tn + other.tn, self.fn + other.fn)


def check_same_nodes(a, b):
    if list(a.labels) != list(b.labels):
        raise NodeMismatchError(f"graphs are over different nodes: {a.labels} vs {b.labels}")


def skeleton_confusion(estimate, truth):
    check_same_nodes(estimate, truth)
    tp = fp = tn = fn = 0
    for i, j in combinations(estimate.nodes, 2):
        found, real = estimate.is_adjacent(i, j), truth.is_adjacent(i, j)
        if found and real:
            tp += 1
        elif found:
            fp += 1
        elif real:
            fn += 1
        else:
            tn += 1
    return SkeletonConfusion(tp, fp, tn, fn)


def tpr_fpr(c):
    """
    (TP / (TP + FN), FP / (FP + TN)); a rate with a zero denominator is None
    """
    tpr = c.tp / (c.tp + c.fn) if c.tp + c.fn else None
    fpr = c.fp / (c.fp + c.tn) if c.fp + c.tn else None
    return tpr, fpr
