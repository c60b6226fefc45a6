"""Max-balancing

``B`` is max-balanced when every edge is a lightest edge of some cycle
through it, or equivalently when for every cut the heaviest edge leaving a
node set equals the heaviest edge entering it.

:func:`max_balance` contracts the graph level by level: the heaviest cycle
mean of the edges between groups is pushed onto every critical edge by an
FP scaling, critical groups are merged, and the search continues with the
next lower level until no edge joins two groups.
"""
import logging

import numpy as np

from .digraph import digraph_of, scc, threshold_digraph
from .errors import (
    CertificationFailure, ExactnessUnavailable, NotIrreducible, SizeLimit
)
from .scaling import DiagonalScaling, apply_scaling, fp_scaling
from .semiring import FLOAT, MaxMatrix, MaxVector
from .spectral import critical_graph, max_cycle_gmean

CUT_SIZE_LIMIT = 14
CUT_CHECK_LIMIT = 8

CYCLE_COVER = "cycle-cover"
CUT = "cut"

logger = logging.getLogger("maxscale")


class BalancingCertificate(object):
    """Result of :func:`max_balance`.

    :param scaling: Balancing scaling
    :type scaling: :class:`maxscale.scaling.DiagonalScaling`
    :param balanced: ``X^-1 A X``
    :type balanced: :class:`maxscale.semiring.MaxMatrix`
    :param checked: Characterisations verified on ``balanced``
    :type checked: list of str
    :param levels: Cycle means met while contracting, decreasing
    :type levels: list of :class:`maxscale.spectral.CycleMean`
    :param warnings: Degradations such as a float fallback
    :type warnings: list of str
    """

    def __init__(self, scaling, balanced, checked, levels, warnings):
        super(BalancingCertificate, self).__init__()
        self.scaling = scaling
        self.balanced = balanced
        self.checked = checked
        self.levels = levels
        self.warnings = warnings

    def __repr__(self):
        return "BalancingCertificate(scaling={0}, checked={1})".format(
            self.scaling.tolist(), self.checked
        )

    @property
    def mode(self):
        return self.balanced.mode


def _require_completely_reducible(matrix):
    components = scc(digraph_of(matrix))
    for (i, j), value in np.ndenumerate(matrix.entries):
        if value > 0 and components.component_of(i) != components.component_of(j):
            raise NotIrreducible(
                "Edge {0} joins two strongly connected components and "
                "cannot be balanced".format((i, j))
            )


def _contract(matrix, group_of, count):
    mode = matrix.mode
    contracted = np.full((count, count), mode.zero, dtype=mode.dtype)
    for (i, j), value in np.ndenumerate(matrix.entries):
        g, h = group_of[i], group_of[j]
        if g != h and value > contracted[g, h]:
            contracted[g, h] = value
    return MaxMatrix._wrap(contracted, mode)


def _merge(group_of, components):
    """Relabel groups after merging each critical component into one."""
    target = {}
    for component in components:
        head = min(component.nodes)
        for group in component.nodes:
            target[group] = head
    merged = [target.get(g, g) for g in group_of]
    labels = {}
    for group in merged:
        labels.setdefault(group, len(labels))
    return [labels[g] for g in merged], len(labels)


def _balance(matrix):
    mode = matrix.mode
    n = matrix.n
    potentials = np.full(n, mode.one, dtype=mode.dtype)
    group_of = list(range(n))
    count = n
    levels = []
    while count > 1:
        current = apply_scaling(matrix, MaxVector._wrap(potentials, mode))
        contracted = _contract(current, group_of, count)
        mean = max_cycle_gmean(contracted)
        if mean.is_zero:
            break
        unit = contracted.scaled(mode.one / mean.value)
        step = fp_scaling(unit).entries
        for node in range(n):
            potentials[node] = potentials[node] * step[group_of[node]]
        levels.append(mean)
        group_of, count = _merge(group_of, critical_graph(unit).components)
        logger.debug("Balancing level {0}: {1} groups left".format(mean, count))
    return DiagonalScaling(MaxVector._wrap(potentials, mode)), levels


def max_balance(matrix, allow_float=True, cut_check_limit=CUT_CHECK_LIMIT):
    """Max-balancing scaling, verified before returning.

    :param matrix: Irreducible (or completely reducible) square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param allow_float: Redo the computation in float mode when a level is
        irrational in exact mode
    :type allow_float: bool
    :param cut_check_limit: Also verify the cut property up to this size
    :type cut_check_limit: int
    :raises NotIrreducible: An edge joins two strong components
    :raises ExactnessUnavailable: Irrational level and ``allow_float`` off
    :raises CertificationFailure: The result is not max-balanced
    :rtype: :class:`BalancingCertificate`
    """
    matrix.require_square()
    _require_completely_reducible(matrix)
    warnings = []
    try:
        scaling, levels = _balance(matrix)
    except ExactnessUnavailable as error:
        if not matrix.mode.exact or not allow_float:
            raise
        message = "{0}; balanced in float mode".format(error)
        logger.warning(message)
        warnings.append(message)
        matrix = matrix.to_mode(FLOAT)
        scaling, levels = _balance(matrix)
    balanced = apply_scaling(matrix, scaling)

    checked = []
    if not is_max_balanced_cyclecover(balanced):
        raise CertificationFailure(
            "Balanced matrix fails the cycle-cover property"
        )
    checked.append(CYCLE_COVER)
    if matrix.n <= cut_check_limit:
        if not is_max_balanced_cut(balanced):
            raise CertificationFailure("Balanced matrix fails the cut property")
        checked.append(CUT)
    return BalancingCertificate(
        scaling.normalized(), apply_scaling(matrix, scaling.normalized()),
        checked, levels, warnings
    )


def is_max_balanced_cyclecover(matrix):
    """True if every edge ``(i, j)`` lies on a cycle where it is lightest.

    Checked as reachability of ``i`` from ``j`` along edges of weight at
    least ``b_ij``.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :rtype: bool
    """
    matrix.require_square()
    levels = {}
    for (i, j), value in np.ndenumerate(matrix.entries):
        if not value > 0 or i == j:
            continue
        if value not in levels:
            levels[value] = threshold_digraph(matrix, value)
        graph = levels[value]
        if i not in graph.reachable(j):
            logger.debug("Edge {0} closes no cycle at level {1}"
                         .format((i, j), value))
            return False
    return True


def is_max_balanced_cut(matrix, size_limit=CUT_SIZE_LIMIT):
    """True if every cut is crossed by equally heavy edges both ways.

    Exhaustive over the ``2^n - 2`` nonempty proper node sets.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param size_limit: Largest dimension accepted
    :type size_limit: int
    :raises SizeLimit: ``n > size_limit``
    :rtype: bool
    """
    matrix.require_square()
    n = matrix.n
    if n > size_limit:
        raise SizeLimit(
            "Exhaustive cut check is limited to n <= {0}, got {1}"
            .format(size_limit, n)
        )
    mode = matrix.mode
    entries = matrix.entries
    nodes = np.arange(n)
    for mask in range(1, 2 ** n - 1):
        inside = (mask >> nodes) & 1 == 1
        leaving = entries[np.ix_(inside, ~inside)].max()
        entering = entries[np.ix_(~inside, inside)].max()
        if not mode.eq(leaving, entering):
            logger.debug("Cut {0} unbalanced: {1} out, {2} in".format(
                list(nodes[inside]), leaving, entering
            ))
            return False
    return True
