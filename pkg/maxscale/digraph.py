"""Weighted digraphs

The digraph ``G(A)`` of a square matrix has an edge ``i -> j`` of weight
``a_ij`` for every positive entry. Graph algorithms (strong components,
cycle search, reachability) are delegated to :mod:`networkx`.
"""
import collections
import logging
import math

import networkx as nx
import numpy as np

from .errors import EnumerationBudget, NotOnCycle, PreconditionError
from .semiring import EXACT, MaxMatrix, Path, lcm

__all__ = [
    "Digraph", "Component", "SccDecomposition", "ThresholdLevel", "Path",
    "digraph_of", "scc", "enumerate_cycles", "graph_cyclicity",
    "threshold_digraph", "threshold_spectrum"
]

ENUMERATION_NODE_LIMIT = 10

logger = logging.getLogger("maxscale")


class Digraph(object):
    """Digraph with positive edge weights and an explicit node set.

    :param nodes: Node indices
    :type nodes: iterable of int
    :param edges: Mapping ``(i, j) -> weight``
    :type edges: dict
    :param mode: Numeric mode of the weights
    :type mode: :class:`maxscale.semiring.NumericMode`
    """

    def __init__(self, nodes, edges=None, mode=EXACT):
        super(Digraph, self).__init__()
        self.mode = mode
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(sorted(int(x) for x in nodes))
        for (source, target), weight in sorted((edges or {}).items()):
            if source not in self.graph or target not in self.graph:
                raise PreconditionError(
                    "Edge {0} leaves the node set".format((source, target))
                )
            self.graph.add_edge(source, target, weight=weight)

    def __repr__(self):
        return "Digraph(nodes={0}, edges={1})".format(
            list(self.nodes), sorted(self.edge_set)
        )

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.nodes == other.nodes and self.edge_set == other.edge_set
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    @property
    def nodes(self):
        """Sorted tuple of nodes."""
        return tuple(sorted(self.graph.nodes))

    @property
    def n(self):
        """Node count."""
        return self.graph.number_of_nodes()

    @property
    def edges(self):
        """Sorted list of ``(i, j, weight)``."""
        return sorted(
            (i, j, data["weight"]) for i, j, data in self.graph.edges(data=True)
        )

    @property
    def edge_set(self):
        """Frozen set of ``(i, j)`` pairs."""
        return frozenset(self.graph.edges)

    def has_edge(self, source, target):
        """True if ``source -> target`` is an edge."""
        return self.graph.has_edge(source, target)

    def weight(self, source, target):
        """Weight of an edge."""
        return self.graph.edges[source, target]["weight"]

    def successors(self, node):
        """Sorted successors of a node."""
        return sorted(self.graph.successors(node))

    def out_degree(self, node):
        """Number of edges leaving a node."""
        return self.graph.out_degree(node)

    def reachable(self, source):
        """Nodes reachable from ``source`` by a path with at least one edge.
        """
        found = set()
        for node in self.graph.successors(source):
            found.add(node)
            found.update(nx.descendants(self.graph, node))
        return found

    def restrict(self, nodes):
        """Induced subgraph on ``nodes``.

        :rtype: :class:`Digraph`
        """
        keep = set(nodes)
        return Digraph(
            keep,
            dict(
                ((i, j), w) for i, j, w in self.edges
                if i in keep and j in keep
            ),
            self.mode
        )

    def is_subgraph_of(self, other):
        """Edge-set inclusion."""
        return self.edge_set <= other.edge_set

    def path(self, nodes):
        """Weighted :class:`Path` along existing edges."""
        weight = self.mode.one
        for source, target in zip(nodes[:-1], nodes[1:]):
            weight = weight * self.weight(source, target)
        return Path(nodes, weight)

    def to_matrix(self, n=None, boolean=False):
        """Matrix with the edge weights and zeros elsewhere.

        :param n: Dimension, defaults to one past the largest node
        :type n: int, optional
        :param boolean: Use weight 1 for every edge
        :type boolean: bool, optional
        :rtype: :class:`maxscale.semiring.MaxMatrix`
        """
        if n is None:
            n = max(self.nodes) + 1 if self.n else 0
        array = np.full((n, n), self.mode.zero, dtype=self.mode.dtype)
        for i, j, weight in self.edges:
            array[i, j] = self.mode.one if boolean else weight
        return MaxMatrix._wrap(array, self.mode)


Component = collections.namedtuple("Component", ["nodes", "trivial"])
Component.__doc__ = """Strongly connected component.

``trivial`` marks a single node without a loop.
"""

ThresholdLevel = collections.namedtuple(
    "ThresholdLevel", ["threshold", "components"]
)
ThresholdLevel.__doc__ = "Threshold and the SCC decomposition it induces."


class SccDecomposition(object):
    """Strongly connected components, ordered by their smallest node.

    :param components: List of :class:`Component`
    """

    def __init__(self, components):
        super(SccDecomposition, self).__init__()
        self.components = tuple(
            sorted(components, key=lambda c: min(c.nodes))
        )
        self._index = {}
        for position, component in enumerate(self.components):
            for node in component.nodes:
                self._index[node] = position

    def __repr__(self):
        return "SccDecomposition({0})".format(
            [(sorted(c.nodes), c.trivial) for c in self.components]
        )

    def __eq__(self, other):
        if not isinstance(other, SccDecomposition):
            return NotImplemented
        return self.components == other.components

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def nontrivial(self):
        """Components that contain a cycle."""
        return [c for c in self.components if not c.trivial]

    def component_of(self, node):
        """Position of the component holding ``node``."""
        return self._index[node]

    def partition(self):
        """Node sets as a frozen set of frozen sets."""
        return frozenset(c.nodes for c in self.components)


def digraph_of(matrix):
    """Weighted digraph of a square matrix.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :rtype: :class:`Digraph`
    """
    matrix.require_square()
    edges = {}
    for (i, j), value in np.ndenumerate(matrix.entries):
        if value > 0:
            edges[(i, j)] = value
    return Digraph(range(matrix.n), edges, matrix.mode)


def scc(graph):
    """Strongly connected components with trivial flags.

    :param graph: Digraph
    :type graph: :class:`Digraph`
    :rtype: :class:`SccDecomposition`
    """
    components = []
    for nodes in nx.strongly_connected_components(graph.graph):
        nodes = frozenset(nodes)
        node = min(nodes)
        trivial = len(nodes) == 1 and not graph.has_edge(node, node)
        components.append(Component(nodes, trivial))
    return SccDecomposition(components)


def enumerate_cycles(graph, max_len=None, node_limit=ENUMERATION_NODE_LIMIT):
    """All elementary cycles up to a given length.

    Each cycle starts at its smallest node; the list is sorted by length,
    then by node sequence. Meant as a brute-force oracle for small graphs.

    :param graph: Digraph
    :type graph: :class:`Digraph`
    :param max_len: Longest cycle length, defaults to the node count
    :type max_len: int, optional
    :param node_limit: Largest node count accepted
    :type node_limit: int, optional
    :raises EnumerationBudget: More nodes than ``node_limit``
    :rtype: list of :class:`maxscale.semiring.Path`
    """
    if graph.n > node_limit:
        raise EnumerationBudget(
            "Cycle enumeration is limited to {0} nodes, got {1}"
            .format(node_limit, graph.n)
        )
    if max_len is None:
        max_len = graph.n
    if max_len < 1:
        return []
    cycles = []
    for body in nx.simple_cycles(graph.graph, length_bound=max_len):
        start = body.index(min(body))
        body = body[start:] + body[:start]
        cycles.append(graph.path(body + [body[0]]))
    cycles.sort(key=lambda c: (c.length, c.nodes))
    return cycles


def graph_cyclicity(graph):
    """Cyclicity of a digraph whose nodes all lie on cycles.

    Each strong component contributes the gcd of its cycle lengths, read
    off BFS levels as ``gcd(level(u) + 1 - level(v))`` over its edges. The
    components combine by lcm.

    :param graph: Digraph
    :type graph: :class:`Digraph`
    :raises NotOnCycle: Some node lies on no cycle
    :rtype: int
    """
    cyclicity = 1
    for component in scc(graph):
        if component.trivial:
            raise NotOnCycle(min(component.nodes))
        cyclicity = lcm(cyclicity, _component_period(graph, component.nodes))
    return cyclicity


def _component_period(graph, nodes):
    root = min(nodes)
    level = {root: 0}
    queue = collections.deque([root])
    while queue:
        node = queue.popleft()
        for succ in graph.successors(node):
            if succ in nodes and succ not in level:
                level[succ] = level[node] + 1
                queue.append(succ)
    period = 0
    for node in nodes:
        for succ in graph.successors(node):
            if succ in nodes:
                period = math.gcd(period, level[node] + 1 - level[succ])
    return period


def threshold_digraph(matrix, threshold):
    """Digraph of the entries at least ``threshold``.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param threshold: Positive threshold
    :raises PreconditionError: Threshold not positive
    :rtype: :class:`Digraph`
    """
    matrix.require_square()
    mode = matrix.mode
    threshold = mode.coerce(threshold)
    if not threshold > 0:
        raise PreconditionError("Threshold must be positive")
    edges = {}
    for (i, j), value in np.ndenumerate(matrix.entries):
        if value > 0 and mode.ge(value, threshold):
            edges[(i, j)] = value
    return Digraph(range(matrix.n), edges, mode)


def threshold_spectrum(matrix):
    """SCC decompositions of threshold digraphs at each entry value.

    Levels run over the distinct positive entries in decreasing order.
    Consecutive levels with the same decomposition collapse onto the
    highest of them.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :rtype: list of :class:`ThresholdLevel`
    """
    levels = []
    for threshold in sorted(set(matrix.positive_entries()), reverse=True):
        decomposition = scc(threshold_digraph(matrix, threshold))
        if levels and levels[-1].components == decomposition:
            continue
        logger.debug("Threshold {0}: {1}".format(threshold, decomposition))
        levels.append(ThresholdLevel(threshold, decomposition))
    return levels
