"""Matrix powers

For an irreducible ``A`` with ``lambda(A) = 1`` the powers ``A^t`` become
periodic after a transient, with period the cyclicity of the critical
graph. Beyond the transient they follow the CSR form ``C S^t R``, where
``C`` and ``R`` are the critical columns and rows of ``(A^gamma)*`` and
``S`` is the critical matrix. Repeating the construction on the matrix left
after deleting the critical nodes gives the Nachtigall expansion.
"""
import collections
import itertools
import logging

import numpy as np

from .errors import (
    AcyclicMatrix, CertificationFailure, Inapplicable, IterationBudget,
    NotIrreducible, NotNormalized
)
from .scaling import DiagonalScaling, apply_scaling
from .semiring import (
    MaxVector, kleene_star, lcm, mat_power, oplus, otimes
)
from .spectral import (
    CycleMean, critical_graph, is_irreducible, max_cycle_gmean,
    principal_eigenvector
)

logger = logging.getLogger("maxscale")


def default_budget(n, cyclicity):
    """Default iteration cap ``3 n^2 + 2 gamma``."""
    return 3 * n * n + 2 * cyclicity


class PeriodicityProfile(object):
    """Transient and period of the power sequence.

    :param transient: Least ``T`` with ``A^(t + gamma) = A^t`` for
        ``t >= T``
    :param period: Least such ``gamma``
    :param predicted_period: Cyclicity of the critical graph
    :param powers: ``A^T, ..., A^(T + gamma)``
    """

    def __init__(self, transient, period, predicted_period, powers):
        super(PeriodicityProfile, self).__init__()
        self.transient = transient
        self.period = period
        self.predicted_period = predicted_period
        self.powers = powers

    def __repr__(self):
        return "PeriodicityProfile(transient={0}, period={1})".format(
            self.transient, self.period
        )


class CsrTriple(object):
    """CSR decomposition of an irreducible matrix.

    ``C``, ``S`` and ``R`` live in visualised coordinates:
    ``A^t = lambda^t X (C S^t R) X^-1`` for ``t >= transient``.
    """

    def __init__(self, mean, scaling, c, s, r, cyclicity, critical_nodes,
                 transient, periodicity_transient):
        super(CsrTriple, self).__init__()
        self.mean = mean
        self.scaling = scaling
        self.c = c
        self.s = s
        self.r = r
        self.cyclicity = cyclicity
        self.critical_nodes = critical_nodes
        self.transient = transient
        self.periodicity_transient = periodicity_transient

    def __repr__(self):
        return "CsrTriple(lambda={0}, cyclicity={1}, transient={2})".format(
            self.mean, self.cyclicity, self.transient
        )

    @property
    def mode(self):
        return self.c.mode


class NachtigallTerm(collections.namedtuple(
        "NachtigallTerm", ["mean", "c", "s", "r", "support", "cyclicity"])):
    """One CSR term ``lambda_k^t C_k S_k^t R_k`` in original coordinates."""

    def power(self, t):
        """The term at power ``t``."""
        core = otimes(otimes(self.c, mat_power(self.s, t)), self.r)
        return core.scaled(self.mean.value ** t)


class NachtigallExpansion(object):
    """Terms with strictly decreasing means and disjoint supports.

    ``validity_start`` is the least ``t`` found from which the expansion
    reproduces ``A^t``, or None when none was found within budget.
    """

    def __init__(self, terms, validity_start, n):
        super(NachtigallExpansion, self).__init__()
        self.terms = terms
        self.validity_start = validity_start
        self.n = n

    def __repr__(self):
        return "NachtigallExpansion(means={0}, validity_start={1})".format(
            [str(term.mean) for term in self.terms], self.validity_start
        )

    @property
    def within_quadratic(self):
        """True if the expansion was found valid by ``t = 3 n^2``."""
        return (
            self.validity_start is not None
            and self.validity_start <= 3 * self.n * self.n
        )


def critical_matrix(matrix):
    """Entries of ``A`` on critical edges, zero elsewhere.

    :raises AcyclicMatrix: ``lambda(A) = 0``
    :rtype: :class:`maxscale.semiring.MaxMatrix`
    """
    return critical_graph(matrix).graph.to_matrix(n=matrix.n)


def normalize_to_unit(matrix):
    """``A / lambda(A)`` and ``lambda(A)``.

    :raises AcyclicMatrix: ``lambda(A) = 0``
    :raises ExactnessUnavailable: Exact mode with irrational ``lambda``
    :rtype: tuple
    """
    mean = max_cycle_gmean(matrix)
    if mean.is_zero:
        raise AcyclicMatrix("Matrix has no cycles; cannot normalize")
    return matrix.scaled(matrix.mode.one / mean.value), mean


def _require_irreducible(matrix):
    if not is_irreducible(matrix):
        raise NotIrreducible("Matrix digraph is not strongly connected")


class _PowerCache(object):
    """Sequential powers ``A^1, A^2, ...``."""

    def __init__(self, matrix):
        self.matrix = matrix
        self.powers = [None, matrix]

    def __getitem__(self, t):
        while len(self.powers) <= t:
            self.powers.append(otimes(self.powers[-1], self.matrix))
        return self.powers[t]


def transient_and_period(matrix, budget=None):
    """Least transient and period of ``A, A^2, ...``.

    The first power equal to an earlier one, ``A^(T + gamma) = A^T``,
    gives both, since the sequence is determined by its last element.

    :param matrix: Irreducible matrix with ``lambda(A) = 1``
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param budget: Largest power computed; without it the search runs until
        the sequence repeats, which the powers of every irreducible matrix
        with ``lambda = 1`` do
    :type budget: int, optional
    :raises NotIrreducible: Digraph not strongly connected
    :raises NotNormalized: ``lambda(A) != 1``
    :raises IterationBudget: No repetition within ``budget``
    :rtype: :class:`PeriodicityProfile`
    """
    _require_irreducible(matrix)
    mean = max_cycle_gmean(matrix)
    if mean != 1:
        raise NotNormalized(
            "lambda(A) = {0}; normalize the matrix first".format(mean)
        )
    predicted = critical_graph(matrix, mean).cyclicity
    mode = matrix.mode
    seen = {}
    powers = _PowerCache(matrix)
    for t in itertools.count(1):
        if budget is not None and t > budget:
            raise IterationBudget(
                "No periodicity found within {0} powers".format(budget)
            )
        power = powers[t]
        earlier = _find_earlier(power, seen, powers, t, mode)
        if earlier is not None:
            period = t - earlier
            if period != predicted:
                logger.warning(
                    "Measured period {0} differs from critical cyclicity {1}"
                    .format(period, predicted)
                )
            logger.debug("Transient {0}, period {1}".format(earlier, period))
            return PeriodicityProfile(
                earlier, period, predicted,
                [powers[k] for k in range(earlier, t + 1)]
            )
        if mode.exact:
            seen[power.key()] = t


def _find_earlier(power, seen, powers, t, mode):
    if mode.exact:
        return seen.get(power.key())
    for earlier in range(1, t):
        if powers[earlier] == power:
            return earlier
    return None


def _csr_factors(unit):
    """``C``, ``S``, ``R``, cyclicity and critical nodes of a matrix with
    ``lambda = 1``.
    """
    graph = critical_graph(unit)
    nodes = list(graph.nodes)
    everything = range(unit.n)
    star = kleene_star(mat_power(unit, graph.cyclicity))
    c = star.submatrix(everything, nodes)
    r = star.submatrix(nodes, everything)
    s = graph.graph.to_matrix(n=unit.n).submatrix(nodes, nodes)
    return c, s, r, graph.cyclicity, nodes


def _csr_core(c, s, r, t):
    return otimes(otimes(c, mat_power(s, t)), r)


def csr_decompose(matrix, budget=None):
    """CSR decomposition, certified against the measured periodicity.

    The matrix is normalized and visualised by its principal eigenvector,
    and ``C``, ``S``, ``R`` are built. Once both ``A^t`` and ``C S^t R`` are
    periodic they agree forever or never, so equality is checked up to
    ``max(T, n^2) + 3 gamma``: ``T`` is the periodicity transient and
    ``S^t`` is periodic from ``n^2`` on. The onset is the least ``t`` from
    which every check holds.

    :param matrix: Irreducible square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param budget: Optional cap on the powers searched; without it the
        search runs until periodicity
    :type budget: int, optional
    :raises NotIrreducible: Digraph not strongly connected
    :raises IterationBudget: ``budget`` given and smaller than the powers
        certification needs
    :raises CertificationFailure: ``A^t`` and ``C S^t R`` still differ
        after both became periodic
    :rtype: :class:`CsrTriple`
    """
    _require_irreducible(matrix)
    unit, mean = normalize_to_unit(matrix)
    scaling = DiagonalScaling(principal_eigenvector(unit))
    visualized = apply_scaling(unit, scaling)
    c, s, r, cyclicity, nodes = _csr_factors(visualized)
    profile = transient_and_period(visualized, budget=budget)
    limit = max(profile.transient, matrix.n * matrix.n) + 3 * cyclicity
    if budget is not None and limit > budget:
        raise IterationBudget(
            "CSR certification needs {0} powers, budget is {1}"
            .format(limit, budget)
        )
    powers = _PowerCache(visualized)
    onset = 1
    for t in range(1, limit + 1):
        if powers[t] != _csr_core(c, s, r, t):
            onset = t + 1
    if onset > limit:
        raise CertificationFailure(
            "A^t and C S^t R differ at t = {0} after periodicity"
            .format(limit)
        )
    logger.debug("CSR onset {0}, periodicity transient {1}".format(
        onset, profile.transient
    ))
    for value in s.positive_entries():
        if not visualized.mode.eq(value, visualized.mode.one):
            raise CertificationFailure(
                "Critical edge of weight {0} after visualisation".format(value)
            )
    return CsrTriple(
        mean, scaling, c, s, r, cyclicity, nodes, onset,
        profile.transient
    )


def csr_power(triple, t):
    """``lambda^t X (C S^t R) X^-1`` in original coordinates.

    :param triple: CSR decomposition
    :type triple: :class:`CsrTriple`
    :param t: Positive exponent
    :type t: int
    :rtype: :class:`maxscale.semiring.MaxMatrix`
    """
    if t < 1:
        raise ValueError("Exponent must be positive, got {0}".format(t))
    core = _csr_core(triple.c, triple.s, triple.r, t)
    original = apply_scaling(core, triple.scaling.inverse())
    return original.scaled(triple.mean.value ** t)


def strong_path_weight(matrix, source, target, t, critical_nodes=None):
    """Heaviest length-``t`` path ``source -> target`` through a critical
    node.

    Dynamic programming over ``(node, visited critical)`` states.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param source: Start node
    :param target: End node
    :param t: Path length, at least 1
    :param critical_nodes: Critical nodes, computed when omitted
    :return: Weight, semiring zero when no such path exists
    """
    if t < 1:
        raise ValueError("Path length must be positive, got {0}".format(t))
    mode = matrix.mode
    if critical_nodes is None:
        critical_nodes = critical_graph(matrix).nodes
    critical = np.zeros(matrix.n, dtype=bool)
    critical[list(critical_nodes)] = True
    plain = np.full(matrix.n, mode.zero, dtype=mode.dtype)
    strong = np.full(matrix.n, mode.zero, dtype=mode.dtype)
    if critical[source]:
        strong[source] = mode.one
    else:
        plain[source] = mode.one
    transposed = matrix.transpose()
    for _ in range(t):
        plain_next = otimes(transposed, MaxVector._wrap(plain, mode)).entries
        strong_next = otimes(transposed, MaxVector._wrap(strong, mode)).entries
        strong = np.where(
            critical, np.maximum(strong_next, plain_next), strong_next
        )
        plain = np.where(critical, mode.zero, plain_next)
    return strong[target]


def _peel(matrix):
    """Means, critical graphs and node sets of the successive terms.

    Each step takes the critical graph of the matrix left after deleting
    the critical nodes of all previous steps. Only cycle means are needed,
    so irrational means stay exact.
    """
    matrix.require_square()
    remaining = list(range(matrix.n))
    while remaining:
        sub = matrix.submatrix(remaining, remaining)
        mean = max_cycle_gmean(sub)
        if mean.is_zero:
            return
        graph = critical_graph(sub, mean)
        yield sub, mean, remaining
        support = set(remaining[k] for k in graph.nodes)
        remaining = [k for k in remaining if k not in support]


def _expansion_terms(matrix):
    n = matrix.n
    terms = []
    for sub, mean, remaining in _peel(matrix):
        unit = sub.scaled(matrix.mode.one / mean.value)
        c, s, r, cyclicity, nodes = _csr_factors(unit)
        support = [remaining[k] for k in nodes]
        terms.append(NachtigallTerm(
            mean,
            c.embedded(remaining, range(len(nodes)), (n, len(nodes))),
            s,
            r.embedded(range(len(nodes)), remaining, (len(nodes), n)),
            support,
            cyclicity
        ))
        logger.debug("Nachtigall term {0} on {1}".format(mean, support))
    if not terms:
        raise AcyclicMatrix("Matrix has no cycles; no expansion")
    return terms


def expansion_power(expansion, t):
    """``(+)_k lambda_k^t C_k S_k^t R_k``.

    :param expansion: Nachtigall expansion
    :type expansion: :class:`NachtigallExpansion`
    :param t: Positive exponent
    :rtype: :class:`maxscale.semiring.MaxMatrix`
    """
    if t < 1:
        raise ValueError("Exponent must be positive, got {0}".format(t))
    result = None
    for term in expansion.terms:
        value = term.power(t)
        result = value if result is None else oplus(result, value)
    return result


def nachtigall_expansion(matrix, budget=None):
    """Nachtigall expansion with an empirically measured validity start.

    Each term is the CSR triple of the matrix left after deleting the
    critical nodes of all previous terms. Validity must hold through
    ``t + 2 gamma`` with ``gamma`` the lcm of the term cyclicities.

    :param matrix: Square matrix with a cycle
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param budget: Largest validity start searched
    :raises AcyclicMatrix: No cycles
    :rtype: :class:`NachtigallExpansion`
    """
    terms = _expansion_terms(matrix)
    cyclicity = 1
    for term in terms:
        cyclicity = lcm(cyclicity, term.cyclicity)
    if budget is None:
        budget = default_budget(matrix.n, cyclicity)
    expansion = NachtigallExpansion(terms, None, matrix.n)
    powers = _PowerCache(matrix)
    window = 2 * cyclicity
    start = None
    streak = 0
    for t in range(1, budget + window + 1):
        if expansion_power(expansion, t) == powers[t]:
            if start is None:
                start = t
            streak += 1
            if streak > window:
                break
        else:
            start = None
            streak = 0
    if start is not None and streak > window and start <= budget:
        expansion.validity_start = start
    else:
        logger.warning(
            "Nachtigall expansion not valid within {0} powers".format(budget)
        )
    return expansion


def transient_bound(matrix):
    """Transient bound ``2 n^2 (max log a - min log a) / (log l1 - log l2)``.

    ``l1 > l2`` are the first two Nachtigall means; the extremes range over
    positive entries. Only the means and their logarithms are used, so
    exact mode handles irrational means.

    :raises AcyclicMatrix: No cycles
    :raises Inapplicable: Fewer than two expansion terms
    :rtype: float
    """
    means = [mean for _, mean, _ in _peel(matrix)]
    if not means:
        raise AcyclicMatrix("Matrix has no cycles; no expansion")
    if len(means) < 2:
        raise Inapplicable(
            "Transient bound needs two expansion terms, found {0}"
            .format(len(means))
        )
    first, second = means[0], means[1]
    if second.is_zero or not first > second:
        raise Inapplicable("Leading means are not strictly ordered")
    positive = matrix.positive_entries()
    spread = (
        CycleMean(max(positive), 1, matrix.mode).log()
        - CycleMean(min(positive), 1, matrix.mode).log()
    )
    n = matrix.n
    return 2 * n * n * spread / (first.log() - second.log())

