"""Commuting matrices

Commuting matrices with positive eigenvectors share one: the eigenspace of
``A`` is invariant under ``B``, so ``B`` acts on it through a small matrix
``K`` with ``B V = V K``, and any positive eigenvector of ``K`` maps to a
common eigenvector ``V z``.
"""
import collections
import logging

import networkx as nx

from .digraph import Digraph, scc
from .errors import (
    CertificationFailure, DimensionMismatch, NotCommuting,
    PreconditionError, WitnessNotFound
)
from .scaling import saturation_graph
from .semiring import EXACT, MaxMatrix, left_residual, otimes
from .spectral import (
    eigenspace_basis, is_eigenvector, max_cycle_gmean, principal_eigenvector
)

logger = logging.getLogger("maxscale")

CommonEigenvector = collections.namedtuple(
    "CommonEigenvector", ["vector", "mean_a", "mean_b"]
)


class BooleanDigraphPair(object):
    """Saturation graphs of two commuting matrices, all weights 1.

    :param first: Boolean digraph of ``A``
    :type first: :class:`maxscale.digraph.Digraph`
    :param second: Boolean digraph of ``B``
    :type second: :class:`maxscale.digraph.Digraph`
    :param commuting: Whether the Boolean matrices commute
    :type commuting: bool
    """

    def __init__(self, first, second, commuting):
        super(BooleanDigraphPair, self).__init__()
        self.first = first
        self.second = second
        self.commuting = commuting

    def __repr__(self):
        return "BooleanDigraphPair(first={0}, second={1}, commuting={2})"\
            .format(sorted(self.first.edge_set), sorted(self.second.edge_set),
                    self.commuting)

    @property
    def n(self):
        return self.first.n

    @property
    def first_matrix(self):
        return self.first.to_matrix(n=self.n, boolean=True)

    @property
    def second_matrix(self):
        return self.second.to_matrix(n=self.n, boolean=True)


def commutes(a, b):
    """True if ``A (x) B = B (x) A``.

    :raises DimensionMismatch: Shapes differ or are not square
    :rtype: bool
    """
    a.require_square()
    b.require_square()
    if a.shape != b.shape:
        raise DimensionMismatch(
            "Cannot compare shapes {0} and {1}".format(a.shape, b.shape)
        )
    return otimes(a, b) == otimes(b, a)


def common_eigenvector(a, b):
    """Positive common eigenvector of commuting matrices.

    Float mode falls back to exact arithmetic when verification fails.

    :param a: Square matrix with a positive eigenvector
    :type a: :class:`maxscale.semiring.MaxMatrix`
    :param b: Square matrix commuting with ``a``
    :type b: :class:`maxscale.semiring.MaxMatrix`
    :raises NotCommuting: ``A B != B A``
    :raises NotIrreducible: No positive eigenvector exists
    :raises CertificationFailure: Verification failed in exact mode
    :rtype: CommonEigenvector
    """
    if not commutes(a, b):
        raise NotCommuting("Matrices do not commute")
    try:
        return _common_eigenvector(a, b)
    except CertificationFailure as error:
        if a.mode.exact:
            raise
        logger.warning("{0}; retrying in exact mode".format(error))
        return _common_eigenvector(a.to_mode(EXACT), b.to_mode(EXACT))


def _common_eigenvector(a, b):
    mean_a = max_cycle_gmean(a)
    mean_b = max_cycle_gmean(b)
    basis = MaxMatrix.from_columns(eigenspace_basis(a))
    image = otimes(b.scaled(b.mode.one / mean_b.value), basis)
    action = left_residual(basis, image)
    if otimes(basis, action) != image:
        raise CertificationFailure("Eigenspace of A is not invariant under B")
    vector = otimes(basis, principal_eigenvector(action))
    if not vector.positive:
        raise CertificationFailure("Common eigenvector is not positive")
    vector = vector.normalized()
    if not (is_eigenvector(a, vector, mean_a)
            and is_eigenvector(b, vector, mean_b)):
        raise CertificationFailure("Common eigenvector failed verification")
    return CommonEigenvector(vector, mean_a, mean_b)


def _boolean_saturation(matrix, vector):
    mean = max_cycle_gmean(matrix)
    unit = matrix.scaled(matrix.mode.one / mean.value)
    graph = saturation_graph(unit, vector).graph
    return Digraph(
        graph.nodes,
        dict(((i, j), matrix.mode.one) for i, j, _ in graph.edges),
        matrix.mode
    )


def boolean_saturation_pair(a, b, vector):
    """Boolean saturation graphs of ``A / lambda(A)`` and ``B / lambda(B)``.

    :param vector: Common eigenvector, an FP scaling of both normalized
        matrices
    :raises NotAnFpScaling: ``vector`` does not scale a normalized matrix
    :rtype: :class:`BooleanDigraphPair`
    """
    first = _boolean_saturation(a, vector)
    second = _boolean_saturation(b, vector)
    n = a.n
    left = first.to_matrix(n=n, boolean=True)
    right = second.to_matrix(n=n, boolean=True)
    return BooleanDigraphPair(
        first, second, otimes(left, right) == otimes(right, left)
    )


def commuting_cycle_witness(pair):
    """Cycles of each graph inside the nontrivial components of the other.

    :param pair: Commuting Boolean digraphs
    :type pair: :class:`BooleanDigraphPair`
    :raises PreconditionError: Not commuting, or a node without successors
    :raises WitnessNotFound: No such cycle
    :rtype: tuple
    """
    if not pair.commuting:
        raise PreconditionError("Boolean digraphs do not commute")
    for graph in (pair.first, pair.second):
        for node in graph.nodes:
            if graph.out_degree(node) == 0:
                raise PreconditionError(
                    "Node {0} has no outgoing edge".format(node)
                )
    return (
        _cycle_within(pair.first, pair.second),
        _cycle_within(pair.second, pair.first)
    )


def _cycle_within(graph, other):
    nodes = set()
    for component in scc(other).nontrivial:
        nodes.update(component.nodes)
    restricted = graph.restrict(nodes)
    try:
        edges = nx.find_cycle(restricted.graph)
    except nx.NetworkXNoCycle:
        raise WitnessNotFound(
            "No cycle inside the nontrivial components of the other graph"
        )
    cycle = [source for source, _ in edges] + [edges[0][0]]
    return restricted.path(cycle).canonical()
