from itertools import combinations

import networkx as nx

from qcausal.core.edge import EDGE_DIRECTED, EDGE_UNDIRECTED, Edge


class MixedGraph:
    """
    A graph with directed and undirected edges over variable indices 0..p-1.
    Used for skeletons (undirected only), PDAGs during orientation, CPDAGs and DAGs.

    Properties:
        labels: the variable names, labels[i] names node i
        directed: set of (i, j) pairs meaning i -> j
        undirected: set of frozenset({i, j}) meaning i -- j
    """

    def __init__(self, labels, directed=(), undirected=()):
        self.labels = [str(label) for label in labels]
        self.directed = set()
        self.undirected = set()
        for i, j in directed:
            self.add_directed(i, j)
        for i, j in undirected:
            self.add_undirected(i, j)

    @classmethod
    def complete(cls, labels):
        return cls(labels, undirected=combinations(range(len(labels)), 2))

    @classmethod
    def from_networkx(cls, dag, labels=None):
        """
        Build a fully directed graph from a networkx DiGraph over integer nodes
        """
        if labels is None:
            labels = [str(v) for v in sorted(dag.nodes())]
        return cls(labels, directed=dag.edges())

    @property
    def p(self):
        return len(self.labels)

    @property
    def nodes(self):
        return list(range(self.p))

    def _check_pair(self, i, j):
        if i == j:
            raise ValueError(f"self-loop on node {i} is not allowed")
        if not (0 <= i < self.p and 0 <= j < self.p):
            raise ValueError(f"edge ({i}, {j}) outside of the {self.p} nodes")

    def add_directed(self, i, j):
        self._check_pair(i, j)
        if (j, i) in self.directed:
            raise ValueError(f"edge {j} -> {i} already present, cannot add {i} -> {j}")
        self.undirected.discard(frozenset((i, j)))
        self.directed.add((i, j))

    def add_undirected(self, i, j):
        self._check_pair(i, j)
        if (i, j) in self.directed or (j, i) in self.directed:
            raise ValueError(f"pair ({i}, {j}) is already directed")
        self.undirected.add(frozenset((i, j)))

    def remove_edge(self, i, j):
        self.undirected.discard(frozenset((i, j)))
        self.directed.discard((i, j))
        self.directed.discard((j, i))

    def orient(self, i, j):
        """
        Turn the undirected edge i -- j into i -> j
        """
        pair = frozenset((i, j))
        if pair not in self.undirected:
            raise ValueError(f"no undirected edge between {i} and {j}")
        self.undirected.remove(pair)
        self.directed.add((i, j))

    def is_adjacent(self, i, j):
        return (frozenset((i, j)) in self.undirected
                or (i, j) in self.directed or (j, i) in self.directed)

    def is_undirected(self, i, j):
        return frozenset((i, j)) in self.undirected

    def is_directed(self, i, j):
        return (i, j) in self.directed

    def neighbors(self, i):
        """
        All adjacent nodes, whatever the edge mark, in ascending order
        """
        return sorted(j for j in self.nodes if j != i and self.is_adjacent(i, j))

    def undirected_neighbors(self, i):
        return sorted(j for j in self.nodes if j != i and self.is_undirected(i, j))

    def parents(self, i):
        return sorted(a for a, b in self.directed if b == i)

    def children(self, i):
        return sorted(b for a, b in self.directed if a == i)

    def adjacent_pairs(self):
        """
        All adjacent unordered pairs as sorted tuples, in ascending order
        """
        pairs = {tuple(sorted(p)) for p in self.undirected}
        pairs.update(tuple(sorted(p)) for p in self.directed)
        return sorted(pairs)

    def n_edges(self):
        return len(self.directed) + len(self.undirected)

    def directed_graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.directed)
        return g

    def has_directed_path(self, i, j):
        return nx.has_path(self.directed_graph(), i, j)

    def is_acyclic(self):
        return nx.is_directed_acyclic_graph(self.directed_graph())

    def edges(self):
        out = [Edge(i, j, EDGE_DIRECTED) for i, j in sorted(self.directed)]
        out += [Edge(*sorted(p), EDGE_UNDIRECTED) for p in sorted(self.undirected, key=sorted)]
        return out

    def copy(self):
        g = MixedGraph(self.labels)
        g.directed = set(self.directed)
        g.undirected = set(self.undirected)
        return g

    def skeleton(self):
        return MixedGraph(self.labels, undirected=self.adjacent_pairs())

    def __eq__(self, other):
        return (isinstance(other, MixedGraph) and self.labels == other.labels
                and self.directed == other.directed and self.undirected == other.undirected)

    def __hash__(self):
        return hash((tuple(self.labels), frozenset(self.directed), frozenset(self.undirected)))

    def as_dict(self):
        return {
            'nodes': list(self.labels),
            'directed': [[self.labels[i], self.labels[j]] for i, j in sorted(self.directed)],
            'undirected': [[self.labels[i], self.labels[j]]
                           for i, j in sorted(tuple(sorted(p)) for p in self.undirected)],
        }

    def __str__(self):
        parts = [f"{self.labels[i]} -> {self.labels[j]}" for i, j in sorted(self.directed)]
        parts += [f"{self.labels[i]} -- {self.labels[j]}"
                  for i, j in sorted(tuple(sorted(p)) for p in self.undirected)]
        return "{" + ", ".join(parts) + "}"

    def __repr__(self):
        return f"MixedGraph({self})"


class SepsetTable:
    """
    The conditioning set that rendered each removed pair independent
    """

    def __init__(self):
        self._sets = {}

    def record(self, i, j, cond):
        self._sets[frozenset((i, j))] = tuple(sorted(cond))

    def get(self, i, j):
        return self._sets.get(frozenset((i, j)))

    def __contains__(self, pair):
        return frozenset(pair) in self._sets

    def __len__(self):
        return len(self._sets)

    def pairs(self):
        return sorted(tuple(sorted(p)) for p in self._sets)

    def items(self):
        return [(pair, self._sets[frozenset(pair)]) for pair in self.pairs()]

    def as_dict(self, labels):
        return {f"{labels[i]}|{labels[j]}": [labels[k] for k in cond] for (i, j), cond in self.items()}
