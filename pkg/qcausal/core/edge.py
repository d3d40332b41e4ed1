EDGE_DIRECTED = 'directed'
EDGE_UNDIRECTED = 'undirected'


class Edge:
    """
    The edges of a mixed graph, connecting variable indices
    """

    def __init__(self, node_from, node_to, edge_type=EDGE_DIRECTED):
        """
        Properties of edges in the mixed graph

        Properties:
            node_from: the index of the node pointed from (any end for undirected edges)
            node_to: the index of the node pointed to
            type: EDGE_DIRECTED or EDGE_UNDIRECTED
        """
        self.node_from = node_from
        self.node_to = node_to
        self.type = edge_type

    @property
    def ends(self):
        if self.type == EDGE_UNDIRECTED:
            return frozenset((self.node_from, self.node_to))
        return (self.node_from, self.node_to)

    def __str__(self):
        return str(self.as_dict())

    def __repr__(self):
        arrow = '->' if self.type == EDGE_DIRECTED else '--'
        return f"Edge({self.node_from} {arrow} {self.node_to})"

    def __eq__(self, other):
        return self.type == other.type and self.ends == other.ends

    def __hash__(self):
        return hash(('ends', self.ends, 'type', self.type))

    def as_dict(self, labels=None):
        def name(i):
            return labels[i] if labels is not None else i
        return {'from': name(self.node_from), 'to': name(self.node_to), 'type': self.type}
