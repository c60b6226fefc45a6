"""Spectral theory

The maximum cycle geometric mean

.. math::

    \\lambda(A) = \\max_C \\Big(\\prod_{(i,j) \\in C} a_{ij}\\Big)^{1/l(C)}

is the largest max-times eigenvalue of ``A``. Means are kept as
``(weight, length)`` pairs in :class:`CycleMean` and compared by cross
powers, so exact mode stays exact even when ``lambda`` is irrational.
"""
import collections
import fractions
import functools
import logging
import math
import numbers

import numpy as np
from sympy import integer_nthroot

from .digraph import Digraph, digraph_of, graph_cyclicity, scc
from .errors import (
    AcyclicMatrix, CertificationFailure, ExactnessUnavailable,
    NotIrreducible
)
from .semiring import (
    MaxMatrix, Path, exponent_of, kleene_star, max_times_view, oplus, otimes
)

logger = logging.getLogger("maxscale")


@functools.total_ordering
class CycleMean(object):
    """Geometric mean ``weight ** (1 / length)`` of a cycle.

    :param weight: Cycle weight (product of its entries)
    :param length: Cycle length, at least 1
    :type length: int
    :param mode: Numeric mode of ``weight``
    :type mode: :class:`maxscale.semiring.NumericMode`
    :param witness: Cycle attaining the mean, if known
    :type witness: :class:`maxscale.semiring.Path`
    """

    def __init__(self, weight, length, mode, witness=None):
        super(CycleMean, self).__init__()
        if length < 1:
            raise ValueError("Cycle length must be positive")
        self.weight = mode.coerce(weight)
        self.length = int(length)
        self.mode = mode
        self.witness = witness

    @classmethod
    def zero(cls, mode):
        """Mean of a matrix without cycles."""
        return cls(mode.zero, 1, mode)

    def __repr__(self):
        return "CycleMean({0}^(1/{1}))".format(self.weight, self.length)

    def __str__(self):
        if self.length == 1:
            return str(self.weight)
        return "({0})^(1/{1})".format(self.weight, self.length)

    def _coerce_other(self, other):
        if isinstance(other, CycleMean):
            return other
        if isinstance(other, (numbers.Real, str)):
            return CycleMean(other, 1, self.mode)
        return None

    def _compare(self, other):
        if self.mode.exact:
            left = self.weight ** other.length
            right = other.weight ** self.length
            return (left > right) - (left < right)
        if self.mode.eq(self.approx, other.approx):
            return 0
        return 1 if self.approx > other.approx else -1

    def __eq__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self._compare(other) == 0

    def __lt__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self._compare(other) < 0

    __hash__ = None

    @property
    def is_zero(self):
        """True for acyclic matrices."""
        return self.weight == 0

    @property
    def is_rational(self):
        """True if :attr:`value` is available in this mode."""
        if not self.mode.exact:
            return True
        try:
            self.value
        except ExactnessUnavailable:
            return False
        return True

    @property
    def value(self):
        """The mean as a number of the mode.

        :raises ExactnessUnavailable: Exact mode and an irrational root
        """
        if not self.mode.exact:
            return self.approx
        if self.length == 1:
            return self.weight
        weight = fractions.Fraction(self.weight)
        top, top_exact = integer_nthroot(weight.numerator, self.length)
        bottom, bottom_exact = integer_nthroot(weight.denominator, self.length)
        if not (top_exact and bottom_exact):
            raise ExactnessUnavailable(
                "Cycle mean {0} is irrational; use float mode".format(self)
            )
        return fractions.Fraction(int(top), int(bottom))

    @property
    def approx(self):
        """Float approximation of the mean."""
        if self.is_zero:
            return 0.0
        return math.exp(self.log())

    def log(self):
        """Natural logarithm of the mean, ``-inf`` when zero."""
        if self.is_zero:
            return float("-inf")
        if self.mode.exact:
            weight = fractions.Fraction(self.weight)
            logarithm = (
                math.log(weight.numerator) - math.log(weight.denominator)
            )
        else:
            logarithm = math.log(self.weight)
        return logarithm / self.length

    def exponent(self, base=None):
        """The mean in the max-plus domain, ``log_b lambda``.

        Exact whenever the weight is an integer power of ``base``, which
        holds for every mean of a lifted
        :class:`maxscale.semiring.MaxPlusMatrix`.

        :param base: Logarithm base; natural in float mode, 2 in exact mode
        :raises ExactnessError: Exact mode and the weight is not a power of
            ``base``
        """
        if self.is_zero:
            return float("-inf")
        return exponent_of(self.weight, self.mode, base) / self.length


class CriticalGraph(object):
    """Union of the cycles attaining ``lambda(A)``.

    :param mean: Maximum cycle mean
    :type mean: :class:`CycleMean`
    :param graph: Critical nodes and edges weighted by ``A``
    :type graph: :class:`maxscale.digraph.Digraph`
    """

    def __init__(self, mean, graph):
        super(CriticalGraph, self).__init__()
        self.mean = mean
        self.graph = graph
        self.components = scc(graph)
        self.cyclicity = graph_cyclicity(graph)

    def __repr__(self):
        return "CriticalGraph(nodes={0}, edges={1}, cyclicity={2})".format(
            list(self.nodes), sorted(self.edges), self.cyclicity
        )

    @property
    def nodes(self):
        """Sorted critical nodes."""
        return self.graph.nodes

    @property
    def edges(self):
        """Critical edges as a frozen set of pairs."""
        return self.graph.edge_set


def _karp(matrix):
    """Maximum cycle mean as a ``(weight ratio, length)`` mean, or None.

    ``D_k(v)`` is the heaviest walk of length ``k`` ending at ``v`` from
    any start; ``lambda = max_v min_k (D_n(v) / D_k(v)) ** (1 / (n - k))``.
    """
    mode = matrix.mode
    n = matrix.n
    entries = matrix.entries
    walks = [np.full(n, mode.one, dtype=mode.dtype)]
    for _ in range(n):
        walks.append((walks[-1][:, None] * entries).max(axis=0))
    best = None
    for node in range(n):
        if not walks[n][node] > 0:
            continue
        worst = None
        for k in range(n):
            if walks[k][node] > 0:
                candidate = CycleMean(
                    walks[n][node] / walks[k][node], n - k, mode
                )
                if worst is None or candidate < worst:
                    worst = candidate
        if best is None or worst > best:
            best = worst
    return best


def _unit_mean_matrix(matrix, mean):
    """Matrix with the critical cycles of ``matrix`` and mean exactly 1.

    Exact mode raises entries to ``length`` and divides by ``weight``, which
    keeps every cycle ratio and avoids roots.
    """
    if matrix.mode.exact:
        return MaxMatrix._wrap(
            matrix.entries ** mean.length / mean.weight, matrix.mode
        )
    return matrix.scaled(1.0 / mean.approx)


def _critical_edges(matrix, mean):
    unit = _unit_mean_matrix(matrix, mean)
    star = kleene_star(unit).entries
    mode = matrix.mode
    edges = []
    for (i, j), value in np.ndenumerate(unit.entries):
        if value > 0 and mode.eq(value * star[j, i], mode.one):
            edges.append((i, j))
    return edges


def _follow_cycle(edges):
    successors = collections.defaultdict(list)
    for source, target in sorted(edges):
        successors[source].append(target)
    node = min(successors)
    seen = {}
    walk = []
    while node not in seen:
        seen[node] = len(walk)
        walk.append(node)
        node = successors[node][0]
    return walk[seen[node]:] + [node]


def max_cycle_gmean(matrix):
    """Maximum cycle geometric mean with a witness cycle.

    Karp's recursion gives the value; the witness is read off the critical
    graph by following the smallest critical successor from the smallest
    critical node.

    A :class:`maxscale.semiring.MaxPlusMatrix` is analysed through its
    lift; the mean's length is multiplied by the lift power, so
    :meth:`CycleMean.exponent` gives its exact max-plus value. The witness
    keeps the lifted weight.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix` or
        :class:`maxscale.semiring.MaxPlusMatrix`
    :return: ``lambda(A)``; zero without witness for acyclic matrices
    :rtype: :class:`CycleMean`
    """
    matrix.require_square()
    matrix, root = max_times_view(matrix)
    mean = _karp(matrix)
    if mean is None:
        return CycleMean.zero(matrix.mode)
    witness = Path.of(matrix, _follow_cycle(_critical_edges(matrix, mean)))
    witness = witness.canonical()
    logger.debug("Maximum cycle mean {0} at {1}".format(mean, witness))
    return CycleMean(
        witness.weight, witness.length * root, matrix.mode, witness
    )


def critical_graph(matrix, mean=None):
    """Critical graph: nodes and edges of all cycles attaining the mean.

    The edges of a :class:`maxscale.semiring.MaxPlusMatrix` carry the
    weights of its lift.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix` or
        :class:`maxscale.semiring.MaxPlusMatrix`
    :param mean: Precomputed :func:`max_cycle_gmean`
    :type mean: :class:`CycleMean`, optional
    :raises AcyclicMatrix: ``lambda(A) = 0``
    :rtype: :class:`CriticalGraph`
    """
    lifted, root = max_times_view(matrix)
    if mean is None:
        mean = max_cycle_gmean(matrix)
    if mean.is_zero:
        raise AcyclicMatrix("Matrix has no cycles; lambda(A) = 0")
    edges = _critical_edges(
        lifted, mean if root == 1 else max_cycle_gmean(lifted)
    )
    nodes = set(i for edge in edges for i in edge)
    graph = Digraph(
        nodes, dict((edge, lifted.entries[edge]) for edge in edges),
        lifted.mode
    )
    return CriticalGraph(mean, graph)


def normalized_star(matrix, mean=None):
    """Kleene star of ``A / lambda(A)`` and the mean used.

    :raises AcyclicMatrix: ``lambda(A) = 0``
    :raises ExactnessUnavailable: Exact mode with irrational ``lambda``
    :rtype: tuple
    """
    if mean is None:
        mean = max_cycle_gmean(matrix)
    if mean.is_zero:
        raise AcyclicMatrix("Matrix has no cycles; lambda(A) = 0")
    unit = matrix.scaled(matrix.mode.one / mean.value)
    return kleene_star(unit), mean


def eigenspace_basis(matrix):
    """Generators of the eigenspace for ``lambda(A)``.

    Columns of ``(A / lambda)*`` at critical nodes span the eigenspace.
    Columns of one critical component are proportional, so only the
    smallest node of each component is kept.

    :param matrix: Square matrix with a positive eigenvector
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :raises NotIrreducible: No positive eigenvector for ``lambda(A)``
    :raises ExactnessUnavailable: Exact mode with irrational ``lambda``
    :raises CertificationFailure: Columns of a component not proportional
    :rtype: list of :class:`maxscale.semiring.MaxVector`
    """
    mean = max_cycle_gmean(matrix)
    if mean.is_zero:
        raise NotIrreducible("Matrix has no cycles")
    star, mean = normalized_star(matrix, mean)
    mode = matrix.mode
    basis = []
    for component in critical_graph(matrix, mean).components:
        nodes = sorted(component.nodes)
        column = star.column(nodes[0])
        for node in nodes[1:]:
            expected = column.scaled(star.entries[nodes[0], node])
            if not mode.array_eq(star.column(node).entries, expected.entries):
                raise CertificationFailure(
                    "Critical columns {0} and {1} are not proportional"
                    .format(nodes[0], node)
                )
        basis.append(column)
    total = functools.reduce(oplus, basis)
    if not total.positive:
        raise NotIrreducible(
            "Some nodes have no access to a critical cycle; no positive "
            "eigenvector exists"
        )
    return basis


def principal_eigenvector(matrix):
    """Positive eigenvector for ``lambda(A)``, smallest entry 1.

    :param matrix: Square matrix, irreducible or with every node having
        access to a critical cycle
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :rtype: :class:`maxscale.semiring.MaxVector`
    """
    return functools.reduce(oplus, eigenspace_basis(matrix)).normalized()


def critical_eigenvector(matrix):
    """Column of ``(A / lambda)*`` at the smallest critical node.

    An eigenvector for ``lambda(A)`` of any matrix with a cycle; it may have
    zero entries.

    :rtype: :class:`maxscale.semiring.MaxVector`
    """
    star, mean = normalized_star(matrix)
    return star.column(min(critical_graph(matrix, mean).nodes))


def is_eigenvector(matrix, vector, eigenvalue):
    """Check ``A (x) x = lambda x``.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param vector: Candidate eigenvector
    :type vector: :class:`maxscale.semiring.MaxVector`
    :param eigenvalue: Scalar, or a :class:`CycleMean` compared exactly
        through powers
    :rtype: bool
    """
    mode = matrix.mode
    image = otimes(matrix, vector).entries
    if not isinstance(eigenvalue, CycleMean):
        expected = vector.entries * mode.coerce(eigenvalue)
        return mode.array_eq(image, expected)
    if not mode.exact:
        return mode.array_eq(image, vector.entries * eigenvalue.approx)
    length = eigenvalue.length
    return bool(np.all(
        image ** length == vector.entries ** length * eigenvalue.weight
    ))


def is_irreducible(matrix):
    """True if ``G(A)`` is strongly connected with at least one edge."""
    components = scc(digraph_of(max_times_view(matrix)[0]))
    return len(components) == 1 and bool(components.nontrivial)
