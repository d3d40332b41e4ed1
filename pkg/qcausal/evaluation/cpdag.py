import networkx as nx

from qcausal.core.graph import MixedGraph
from qcausal.evaluation.confusion import check_same_nodes
from qcausal.exceptions import CyclicGraphError
from qcausal.pc.orientation import propagate_orientations, unshielded_triples


def as_dag(dag, labels=None):
    """
    A fully directed MixedGraph from a MixedGraph or a networkx DiGraph
    """
    if isinstance(dag, nx.DiGraph):
        dag = MixedGraph.from_networkx(dag, labels)
    if dag.undirected:
        raise CyclicGraphError("a DAG was expected, but the graph has undirected edges")
    if not dag.is_acyclic():
        raise CyclicGraphError(f"a DAG was expected, but {dag} has a directed cycle")
    return dag


def dag_to_cpdag(dag, labels=None):
    """
    Keep the arrows of the v-structures, then orient with the PC propagation rules
    """
    dag = as_dag(dag, labels)
    cpdag = dag.skeleton()
    for x, z, y in unshielded_triples(cpdag):
        if dag.is_directed(x, z) and dag.is_directed(y, z):
            for a in (x, y):
                if cpdag.is_undirected(a, z):
                    cpdag.orient(a, z)
    return propagate_orientations(cpdag)


def markov_accuracy(estimate, truth_dag):
    """
    Whether `estimate` is exactly the CPDAG of the equivalence class of `truth_dag`
    """
    truth = dag_to_cpdag(truth_dag, estimate.labels)
    check_same_nodes(estimate, truth)
    return estimate == truth
