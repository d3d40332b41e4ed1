import logging
from itertools import combinations

logger = logging.getLogger(__name__)


def _orient(graph, a, b, reason):
    """
    Orient a -- b as a -> b unless it would close a directed cycle
    """
    if graph.has_directed_path(b, a):
        logger.warning("skipped %s -> %s (%s): it would close a directed cycle",
                       graph.labels[a], graph.labels[b], reason)
        return False
    graph.orient(a, b)
    logger.debug("oriented %s -> %s (%s)", graph.labels[a], graph.labels[b], reason)
    return True


def unshielded_triples(graph):
    """
    (x, z, y) with x < y both adjacent to z and x, y nonadjacent
    """
    for z in graph.nodes:
        for x, y in combinations(graph.neighbors(z), 2):
            if not graph.is_adjacent(x, y):
                yield x, z, y


def orient_vstructures(skeleton, sepsets):
    """
    x -> z <- y for every unshielded triple with z outside Sepset(x, y).
    The first orientation of an edge wins; contradicting arrows are logged.
    """
    graph = skeleton.copy()
    labels = graph.labels
    for x, z, y in unshielded_triples(skeleton):
        sepset = sepsets.get(x, y)
        if sepset is None:
            logger.warning("no separating set for %s and %s, triple left alone", labels[x], labels[y])
            continue
        if z in sepset:
            continue
        for a in (x, y):
            if graph.is_directed(a, z):
                continue
            if graph.is_directed(z, a):
                logger.info("collider conflict on %s - %s: keeping %s -> %s",
                            labels[a], labels[z], labels[z], labels[a])
                continue
            _orient(graph, a, z, f"collider at {labels[z]}")
    return graph


def _apply_once(graph):
    """
    One pass of the two propagation rules; returns whether anything changed
    """
    # x -> z -- y with x, y nonadjacent: z -> y
    for x, z in sorted(graph.directed):
        for y in graph.undirected_neighbors(z):
            if y != x and not graph.is_adjacent(x, y):
                if _orient(graph, z, y, f"away from {graph.labels[x]} -> {graph.labels[z]}"):
                    return True
    # x -- y with a directed path from x to y: x -> y
    for pair in sorted(graph.undirected, key=sorted):
        x, y = sorted(pair)
        for a, b in ((x, y), (y, x)):
            if graph.has_directed_path(a, b):
                graph.orient(a, b)
                logger.debug("oriented %s -> %s (directed path)", graph.labels[a], graph.labels[b])
                return True
    return False


def propagate_orientations(graph):
    """
    Apply both rules to a fixed point; adjacencies are never added or removed
    """
    graph = graph.copy()
    budget = graph.n_edges() ** 2 + 1
    for _ in range(budget):
        if not _apply_once(graph):
            break
    return graph
