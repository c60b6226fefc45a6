"""Diagonal scalings

A positive vector ``x`` scales ``A`` to ``X^-1 A X``, that is
``b_ij = a_ij x_j / x_i``. Cycle weights are invariant under scaling, so
whether every entry can be pushed to at most 1 depends on the cycles only:
such an FP scaling exists exactly when no cycle has weight above 1, and the
FP scalings are the positive vectors of the form ``A* (x) u``.

The row/column-maxima and sandwich problems reduce to the same question
for an auxiliary matrix ``Q``: ``x`` solves them iff ``Q (x) x <= x``.
"""
import logging
import random

import numpy as np

from .digraph import Digraph
from .errors import (
    CertificationFailure, DimensionMismatch, Divergent, HadamardFailure,
    ModeMismatch, NegativeEntry, NoScaling, NotAnFpScaling,
    PatternViolation, PreconditionError, ZeroDiagonal
)
from .semiring import (
    EXACT, MaxMatrix, MaxVector, Path, entrywise_div, kleene_star, oplus,
    otimes
)
from .spectral import max_cycle_gmean, principal_eigenvector

logger = logging.getLogger("maxscale")

FAMILY_RULE = "x = Q* (x) u, u > 0"


class DiagonalScaling(object):
    """Positive scaling vector ``x``, the diagonal of ``X``.

    :param vector: Positive entries
    :type vector: :class:`maxscale.semiring.MaxVector` or sequence
    :param mode: Numeric mode used when ``vector`` is a plain sequence
    :raises NegativeEntry: Some entry is not positive
    """

    def __init__(self, vector, mode=EXACT):
        super(DiagonalScaling, self).__init__()
        if isinstance(vector, DiagonalScaling):
            vector = vector.vector
        if not isinstance(vector, MaxVector):
            vector = MaxVector(vector, mode)
        if not vector.positive:
            raise NegativeEntry(
                "Scaling vector must be positive, got {0}"
                .format(vector.tolist())
            )
        self.vector = vector

    def __repr__(self):
        return "DiagonalScaling({0})".format(self.vector.tolist())

    def __eq__(self, other):
        if not isinstance(other, DiagonalScaling):
            return NotImplemented
        return self.vector == other.vector

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    @property
    def mode(self):
        return self.vector.mode

    @property
    def n(self):
        return self.vector.n

    @property
    def entries(self):
        return self.vector.entries

    def tolist(self):
        return self.vector.tolist()

    def inverse(self):
        """Scaling by ``x^-1``; undoes this one."""
        return DiagonalScaling(self.vector.inverse())

    def normalized(self):
        """Same scaling up to a factor, smallest entry 1."""
        return DiagonalScaling(self.vector.normalized())


class SaturationGraph(object):
    """Edges that an FP scaling pushes exactly to 1.

    :param scaling: The FP scaling
    :type scaling: :class:`DiagonalScaling`
    :param graph: Saturated edges over all nodes of ``A``
    :type graph: :class:`maxscale.digraph.Digraph`
    """

    def __init__(self, scaling, graph):
        super(SaturationGraph, self).__init__()
        self.scaling = scaling
        self.graph = graph

    def __repr__(self):
        return "SaturationGraph(edges={0})".format(sorted(self.edges))

    @property
    def edges(self):
        return self.graph.edge_set


class ScalingFamily(object):
    """Solution set ``{x > 0 : Q (x) x <= x}``, described by ``Q*``.

    Every ``Q* (x) u`` with positive ``u`` is a solution, and every solution
    has this form with ``u = x``.

    :param q: Auxiliary matrix
    :type q: :class:`maxscale.semiring.MaxMatrix`
    :param q_star: Kleene star of ``q``
    :type q_star: :class:`maxscale.semiring.MaxMatrix`
    """

    rule = FAMILY_RULE

    def __init__(self, q, q_star):
        super(ScalingFamily, self).__init__()
        self.q = q
        self.q_star = q_star

    def __repr__(self):
        return "ScalingFamily(q={0})".format(self.q.tolist())

    @property
    def mode(self):
        return self.q.mode

    def sample(self, u=None):
        """Scaling generated by ``u`` (all ones by default).

        :param u: Positive generator
        :type u: :class:`maxscale.semiring.MaxVector`, optional
        :rtype: :class:`DiagonalScaling`
        """
        if u is None:
            u = MaxVector.ones(self.q.n, self.mode)
        elif not isinstance(u, MaxVector):
            u = MaxVector(u, self.mode)
        if not u.positive:
            raise NegativeEntry("Generator must be positive")
        return DiagonalScaling(otimes(self.q_star, u))

    def random_sample(self, rng=None):
        """Scaling generated by a random positive ``u``.

        :param rng: Random source, defaults to a fresh unseeded one
        :type rng: :class:`random.Random`, optional
        :rtype: :class:`DiagonalScaling`
        """
        rng = rng or random.Random()
        if self.mode.exact:
            values = [
                EXACT.coerce(rng.randint(1, 1000)) / 100
                for _ in range(self.q.n)
            ]
        else:
            values = [rng.uniform(0.01, 10.0) for _ in range(self.q.n)]
        return self.sample(MaxVector(values, self.mode))

    def contains(self, scaling):
        """True if ``x`` is positive and ``Q* (x) x = x``."""
        vector = getattr(scaling, "vector", scaling)
        if not isinstance(vector, MaxVector):
            vector = MaxVector(vector, self.mode)
        return vector.positive and otimes(self.q_star, vector) == vector


def _as_scaling(scaling, mode):
    if isinstance(scaling, DiagonalScaling):
        return scaling
    return DiagonalScaling(scaling, mode)


def apply_scaling(matrix, scaling):
    """Scaled matrix ``X^-1 A X`` with ``b_ij = a_ij x_j / x_i``.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :param scaling: Positive scaling vector
    :type scaling: :class:`DiagonalScaling`
    :rtype: :class:`maxscale.semiring.MaxMatrix`
    """
    matrix.require_square()
    scaling = _as_scaling(scaling, matrix.mode)
    if scaling.mode != matrix.mode:
        raise ModeMismatch("Scaling and matrix use different modes")
    if scaling.n != matrix.n:
        raise DimensionMismatch(
            "Scaling of size {0} for a {1}x{1} matrix"
            .format(scaling.n, matrix.n)
        )
    x = scaling.entries
    return MaxMatrix._wrap(
        matrix.entries * x[None, :] / x[:, None], matrix.mode
    )


def is_fp_scaling(matrix, scaling, strict=False):
    """Check that every positive scaled entry is at most (below) 1.

    :param strict: Require ``< 1`` on positive entries
    :type strict: bool
    :rtype: bool
    """
    mode = matrix.mode
    scaled = apply_scaling(matrix, scaling).entries
    for value in scaled[scaled > 0]:
        if strict and not mode.lt(value, mode.one):
            return False
        if not mode.le(value, mode.one):
            return False
    return True


def fp_scaling(matrix):
    """FP scaling ``x = A* (x) u``.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :raises NoScaling: A cycle of weight above 1; carries the cycle
    :rtype: :class:`DiagonalScaling`
    """
    try:
        star = kleene_star(matrix)
    except Divergent as error:
        raise NoScaling(
            "No FP scaling: cycle {0} has weight {1} > 1"
            .format(error.cycle.nodes, error.cycle.weight),
            error.cycle
        )
    scaling = DiagonalScaling(
        otimes(star, MaxVector.ones(matrix.n, matrix.mode))
    )
    if not is_fp_scaling(matrix, scaling):
        raise CertificationFailure(
            "Computed vector {0} is not an FP scaling".format(scaling)
        )
    return scaling


def strong_fp_scaling(matrix):
    """Strong FP scaling, every positive scaled entry below 1.

    Exists iff ``lambda(A) < 1``; then the ordinary row sums of ``A*``
    give one.

    :raises NoScaling: Some cycle has weight at least 1
    :rtype: :class:`DiagonalScaling`
    """
    mean = max_cycle_gmean(matrix)
    if mean >= 1:
        raise NoScaling(
            "No strong FP scaling: cycle {0} has weight {1} >= 1"
            .format(mean.witness.nodes, mean.witness.weight),
            mean.witness
        )
    star = kleene_star(matrix).entries
    scaling = DiagonalScaling(
        MaxVector._wrap(star.sum(axis=1), matrix.mode)
    )
    if not is_fp_scaling(matrix, scaling, strict=True):
        raise CertificationFailure(
            "Computed vector {0} is not a strong FP scaling".format(scaling)
        )
    return scaling


def saturation_graph(matrix, scaling):
    """Edges with ``x_i^-1 a_ij x_j = 1``.

    Float mode decides equality with the mode tolerance.

    :raises NotAnFpScaling: Some scaled entry exceeds 1
    :rtype: :class:`SaturationGraph`
    """
    scaling = _as_scaling(scaling, matrix.mode)
    if not is_fp_scaling(matrix, scaling):
        raise NotAnFpScaling(
            "{0} does not scale every entry to at most 1".format(scaling)
        )
    mode = matrix.mode
    scaled = apply_scaling(matrix, scaling)
    edges = {}
    for (i, j), value in np.ndenumerate(scaled.entries):
        if value > 0 and mode.eq(value, mode.one):
            edges[(i, j)] = value
    return SaturationGraph(scaling, Digraph(range(matrix.n), edges, mode))


def eigenvector_scaling(matrix):
    """Scaling by the principal eigenvector.

    Every scaled entry is at most ``lambda(A)``, with equality on the
    critical edges.

    :return: The scaling and ``lambda(A)``
    :rtype: tuple
    """
    mean = max_cycle_gmean(matrix)
    return DiagonalScaling(principal_eigenvector(matrix)), mean


def _family(q, problem):
    try:
        q_star = kleene_star(q)
    except Divergent as error:
        raise NoScaling(
            "No {0} scaling: cycle {1} of Q has weight {2} > 1"
            .format(problem, error.cycle.nodes, error.cycle.weight),
            error.cycle
        )
    logger.debug("Q = {0}".format(q))
    return ScalingFamily(q, q_star)


def row_col_maxima_scalings(matrix):
    """Scalings after which ``b_ii = max_j b_ij = max_j b_ji``.

    With ``D = diag(a_11, ..., a_nn)`` the solutions are the FP scalings of
    ``Q = A D^-1 (+) D^-1 A``.

    :param matrix: Square matrix with a positive diagonal
    :type matrix: :class:`maxscale.semiring.MaxMatrix`
    :raises ZeroDiagonal: Some ``a_ii = 0``
    :raises NoScaling: ``lambda(Q) > 1``
    :rtype: :class:`ScalingFamily`
    """
    matrix.require_square()
    diagonal = np.diagonal(matrix.entries)
    for index, value in enumerate(diagonal):
        if not value > 0:
            raise ZeroDiagonal(index)
    q = oplus(
        MaxMatrix._wrap(matrix.entries / diagonal[None, :], matrix.mode),
        MaxMatrix._wrap(matrix.entries / diagonal[:, None], matrix.mode)
    )
    family = _family(q, "row/column maxima")
    scaled = apply_scaling(matrix, family.sample())
    if not has_dominant_diagonal(scaled):
        raise CertificationFailure(
            "Sample does not equalize row and column maxima"
        )
    return family


def has_dominant_diagonal(matrix):
    """True if every diagonal entry is the maximum of its row and column."""
    mode = matrix.mode
    entries = matrix.entries
    for i in range(matrix.n):
        top = max(entries[i, :].max(), entries[:, i].max())
        if not mode.eq(entries[i, i], top):
            return False
    return True


def sandwich_scalings(triples):
    """Scalings with ``A_i <= X^-1 B_i X <= C_i`` for every triple.

    ``Q = (+)_i B_i / C_i (+) (+)_i A_i^T / B_i^T``, quotients taken with
    ``0 / 0 = 0``.

    :param triples: Nonempty list of ``(A_i, B_i, C_i)``
    :raises PatternViolation: ``G(A_i) <= G(B_i) <= G(C_i)`` fails
    :raises NoScaling: ``lambda(Q) > 1``
    :rtype: :class:`ScalingFamily`
    """
    triples = list(triples)
    if not triples:
        raise PreconditionError("At least one triple is required")
    first = triples[0][0]
    for number, triple in enumerate(triples):
        for matrix in triple:
            matrix.require_square()
            if matrix.mode != first.mode:
                raise ModeMismatch("All matrices must share one mode")
            if matrix.shape != first.shape:
                raise DimensionMismatch("All matrices must share one shape")
        _check_pattern(number, triple[0], triple[1], "A", "B")
        _check_pattern(number, triple[1], triple[2], "B", "C")
    q = None
    for lower, middle, upper in triples:
        term = oplus(
            entrywise_div(middle, upper),
            entrywise_div(lower.transpose(), middle.transpose())
        )
        q = term if q is None else oplus(q, term)
    family = _family(q, "sandwich")
    sample = family.sample()
    for lower, middle, upper in triples:
        scaled = apply_scaling(middle, sample)
        if not (lower <= scaled and scaled <= upper):
            raise CertificationFailure("Sample violates a sandwich bound")
    return family


def _check_pattern(number, inner, outer, inner_name, outer_name):
    outside = inner.support() & ~outer.support()
    if outside.any():
        position = tuple(int(k) for k in np.argwhere(outside)[0])
        raise PatternViolation(
            number, position,
            "Triple {0}: {1} has an edge at {2} outside the digraph of {3}"
            .format(number, inner_name, position, outer_name)
        )


def _real_rows(matrix, mode):
    rows = [[mode.coerce(value) for value in row] for row in matrix]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise DimensionMismatch("Expected a square real matrix")
    return rows


def satisfies_condition_two(matrix, scaling, mode=EXACT):
    """Check ``0 != |c_ii| >= |c_ij|`` for ``C = D^-1 B D``.

    :param matrix: Real square matrix ``B`` (signed entries)
    :param scaling: Positive diagonal ``d``
    :rtype: bool
    """
    rows = _real_rows(matrix, mode)
    d = _as_scaling(scaling, mode).entries
    for i, row in enumerate(rows):
        diagonal = abs(row[i])
        if diagonal == 0:
            return False
        for j, value in enumerate(row):
            if not mode.le(abs(value) * d[j] / d[i], diagonal):
                return False
    return True


def hadamard_scaling_test(matrix, mode=EXACT):
    """Find ``D`` making the diagonal of ``D^-1 B D`` dominant in modulus.

    Such a ``D`` exists iff every diagonal entry is nonzero and every cyclic
    product of off-diagonal moduli is at most the product of the diagonal
    moduli on the same indices. ``D`` is the FP scaling of
    ``m_ij = |b_ij| / |b_ii|`` (``i != j``).

    :param matrix: Real square matrix ``B``, nested sequence of signed
        numbers
    :param mode: Numeric mode
    :raises PreconditionError: Fewer than 2 rows
    :raises ZeroDiagonal: Some ``b_ii = 0``
    :raises HadamardFailure: A cyclic product exceeds the diagonal product
    :rtype: :class:`DiagonalScaling`
    """
    rows = _real_rows(matrix, mode)
    n = len(rows)
    if n < 2:
        raise PreconditionError("Hadamard test needs n >= 2")
    for i in range(n):
        if rows[i][i] == 0:
            raise ZeroDiagonal(i)
    ratios = [
        [
            mode.zero if i == j else abs(rows[i][j]) / abs(rows[i][i])
            for j in range(n)
        ]
        for i in range(n)
    ]
    try:
        scaling = fp_scaling(MaxMatrix(ratios, mode))
    except NoScaling as error:
        nodes = error.cycle.nodes
        product = mode.one
        diagonal = mode.one
        for source, target in zip(nodes[:-1], nodes[1:]):
            product = product * abs(rows[source][target])
            diagonal = diagonal * abs(rows[source][source])
        raise HadamardFailure(
            "Cyclic product {0} along {1} exceeds diagonal product {2}"
            .format(product, nodes, diagonal),
            Path(nodes, product), diagonal
        )
    if not satisfies_condition_two(rows, scaling, mode):
        raise CertificationFailure(
            "{0} does not make the diagonal dominant".format(scaling)
        )
    return scaling
