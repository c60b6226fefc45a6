"""Max-times semiring

Nonnegative numbers with ``a (+) b = max(a, b)`` and the ordinary product
``a (x) b = ab``. The semiring zero is ``0`` and the unit is ``1``.

Every matrix and vector belongs to one :class:`NumericMode`:

``exact``
    Entries are :class:`fractions.Fraction` held in ``numpy`` object arrays.
    Comparisons are exact. This is the reference mode for verification.

``float``
    Entries are ``float64``. Two numbers ``a`` and ``b`` compare equal when
    ``|a - b| <= eps * max(1, |a|, |b|)``.

Values are immutable after construction, so they can be shared freely
between threads.
"""
import fractions
import logging
import math
import numbers

import numpy as np

from .errors import (
    DimensionMismatch, Divergent, ExactnessError, ModeMismatch,
    NegativeEntry, NoConstraint, UndefinedDivision
)

logger = logging.getLogger("maxscale")

DEFAULT_TOLERANCE = 1e-9
DEFAULT_EXACT_BASE = 2

MAX_TIMES = "max-times"
MAX_PLUS = "max-plus"


class NumericMode(object):
    """Numeric mode shared by all entries of a matrix.

    :param exact: Exact rationals if True, floats otherwise
    :type exact: bool
    :param tolerance: Relative tolerance used in float mode
    :type tolerance: float
    """

    def __init__(self, exact=True, tolerance=DEFAULT_TOLERANCE):
        super(NumericMode, self).__init__()
        self.exact = bool(exact)
        self.tolerance = 0.0 if self.exact else float(tolerance)
        if self.tolerance < 0:
            raise ValueError("Tolerance must be nonnegative")

    def __repr__(self):
        if self.exact:
            return "NumericMode(exact)"
        return "NumericMode(float, tolerance={0})".format(self.tolerance)

    def __eq__(self, other):
        if not isinstance(other, NumericMode):
            return NotImplemented
        return (self.exact, self.tolerance) == (other.exact, other.tolerance)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.exact, self.tolerance))

    @property
    def name(self):
        """``"exact"`` or ``"float"``."""
        return "exact" if self.exact else "float"

    @property
    def dtype(self):
        """``numpy`` dtype used for entries."""
        return object if self.exact else float

    @property
    def zero(self):
        """Semiring zero."""
        return fractions.Fraction(0) if self.exact else 0.0

    @property
    def one(self):
        """Semiring unit."""
        return fractions.Fraction(1) if self.exact else 1.0

    def coerce(self, value):
        """Convert a number (or a ``"p/q"`` / decimal string) to this mode.

        Floats become the fraction of their shortest decimal form in exact
        mode, so ``0.1`` is ``1/10``.

        :param value: Number to convert
        :raises ValueError: Not a finite number
        :return: Converted number
        :rtype: fractions.Fraction or float
        """
        if isinstance(value, str):
            value = fractions.Fraction(value.strip())
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError("{0} is not a finite number".format(value))
        if not self.exact:
            return float(value)
        if isinstance(value, fractions.Fraction):
            return value
        if isinstance(value, numbers.Integral):
            return fractions.Fraction(int(value))
        if isinstance(value, float):
            return fractions.Fraction(repr(float(value)))
        return fractions.Fraction(value)

    def eq(self, a, b):
        """Mode equality of two scalars."""
        if self.exact:
            return a == b
        return abs(a - b) <= self.tolerance * max(1.0, abs(a), abs(b))

    def le(self, a, b):
        """``a <= b`` up to the mode tolerance."""
        return a <= b or self.eq(a, b)

    def lt(self, a, b):
        """``a < b`` and not equal within the mode tolerance."""
        return a < b and not self.eq(a, b)

    def ge(self, a, b):
        """``a >= b`` up to the mode tolerance."""
        return self.le(b, a)

    def gt(self, a, b):
        """``a > b`` and not equal within the mode tolerance."""
        return self.lt(b, a)

    def close(self, x, y):
        """Entrywise mode equality of two arrays.

        :return: Boolean array
        :rtype: numpy.ndarray
        """
        if self.exact:
            return np.asarray(x == y, dtype=bool)
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
        return np.abs(x - y) <= self.tolerance * scale

    def array_eq(self, x, y):
        """All entries equal in this mode."""
        return bool(np.all(self.close(x, y)))

    def array_le(self, x, y):
        """All entries of ``x`` at most those of ``y`` in this mode."""
        below = np.asarray(x <= y, dtype=bool)
        if self.exact:
            return bool(np.all(below))
        return bool(np.all(below | self.close(x, y)))


EXACT = NumericMode(exact=True)
FLOAT = NumericMode(exact=False)


def float_mode(tolerance=DEFAULT_TOLERANCE):
    """Float mode with a custom tolerance.

    :param tolerance: Relative tolerance
    :type tolerance: float
    :rtype: :class:`NumericMode`
    """
    return NumericMode(exact=False, tolerance=tolerance)


class Path(object):
    """A path ``i1 -> ... -> ik`` with its weight.

    A cycle is a path whose first and last nodes agree; its length is the
    number of edges.

    :param nodes: Node sequence
    :type nodes: sequence of int
    :param weight: Product of the edge weights
    """

    def __init__(self, nodes, weight):
        super(Path, self).__init__()
        self.nodes = tuple(int(x) for x in nodes)
        self.weight = weight

    def __repr__(self):
        return "Path({0}, weight={1})".format(
            "->".join(str(x) for x in self.nodes), self.weight
        )

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self.nodes == other.nodes and self.weight == other.weight

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.nodes)

    @classmethod
    def of(cls, matrix, nodes):
        """Build a path weighted by the entries of a matrix.

        :param matrix: Source of edge weights
        :type matrix: :class:`MaxMatrix`
        :param nodes: Node sequence
        :rtype: :class:`Path`
        """
        weight = matrix.mode.one
        for source, target in zip(nodes[:-1], nodes[1:]):
            weight = weight * matrix.entries[source, target]
        return cls(nodes, weight)

    @property
    def length(self):
        """Number of edges."""
        return len(self.nodes) - 1

    @property
    def is_cycle(self):
        """True for closed paths with at least one edge."""
        return len(self.nodes) > 1 and self.nodes[0] == self.nodes[-1]

    @property
    def edges(self):
        """List of ``(i, j)`` edges."""
        return list(zip(self.nodes[:-1], self.nodes[1:]))

    @property
    def node_set(self):
        """Distinct nodes on the path."""
        return frozenset(self.nodes)

    def canonical(self):
        """Rotate a cycle so that it starts at its smallest node.

        :rtype: :class:`Path`
        """
        if not self.is_cycle:
            return self
        body = list(self.nodes[:-1])
        start = body.index(min(body))
        body = body[start:] + body[:start]
        return Path(body + [body[0]], self.weight)


class _Array(object):
    """Shared behaviour of :class:`MaxMatrix` and :class:`MaxVector`."""
    ndim = None

    def __init__(self, entries, mode=EXACT):
        super(_Array, self).__init__()
        if isinstance(entries, _Array):
            entries = entries.entries
        raw = np.asarray(entries, dtype=object)
        if raw.ndim != self.ndim or 0 in raw.shape:
            raise DimensionMismatch(
                "Expected a nonempty {0}-dimensional array, got shape {1}"
                .format(self.ndim, raw.shape)
            )
        array = np.empty(raw.shape, dtype=mode.dtype)
        for index, value in np.ndenumerate(raw):
            try:
                number = mode.coerce(value)
            except (TypeError, ValueError, ZeroDivisionError):
                raise NegativeEntry(
                    "Invalid entry {0!r} at {1}".format(value, index)
                )
            if not number >= 0:
                raise NegativeEntry(
                    "Negative entry {0} at {1}".format(value, index)
                )
            array[index] = number
        self._set(array, mode)

    def _set(self, array, mode):
        array.setflags(write=False)
        self._entries = array
        self._mode = mode

    @classmethod
    def _wrap(cls, array, mode):
        """Trusted constructor: no validation, converts dtype only."""
        instance = cls.__new__(cls)
        converted = np.array(array, dtype=mode.dtype)
        if mode.exact:
            converted = _as_fractions(converted)
        instance._set(converted, mode)
        return instance

    @property
    def entries(self):
        """Read-only ``numpy`` array of entries."""
        return self._entries

    @property
    def mode(self):
        """:class:`NumericMode` of the entries."""
        return self._mode

    @property
    def shape(self):
        """Array shape."""
        return self._entries.shape

    def __getitem__(self, key):
        return self._entries[key]

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.mode == other.mode
            and self.mode.array_eq(self._entries, other.entries)
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __le__(self, other):
        _check_compatible(self, other)
        return self.mode.array_le(self._entries, other.entries)

    def __ge__(self, other):
        _check_compatible(self, other)
        return self.mode.array_le(other.entries, self._entries)

    def tolist(self):
        """Entries as nested Python lists."""
        return self._entries.tolist()

    def scaled(self, factor):
        """Multiply every entry by a nonnegative scalar."""
        factor = self.mode.coerce(factor)
        if factor < 0:
            raise NegativeEntry("Negative scale factor {0}".format(factor))
        return self._wrap(self._entries * factor, self.mode)

    def to_mode(self, mode):
        """Convert to another numeric mode."""
        if mode == self.mode:
            return self
        if mode.exact:
            array = np.empty(self.shape, dtype=object)
            for index, value in np.ndenumerate(self._entries):
                array[index] = mode.coerce(float(value))
            return self._wrap(array, mode)
        return self._wrap(self._entries.astype(float), mode)


class MaxMatrix(_Array):
    """Dense matrix over the max-times semiring.

    Square in most operations; rectangular shapes appear for eigenspace
    bases and the ``C``/``R`` factors of a CSR decomposition.

    :param entries: Nested sequence or array of nonnegative numbers
    :param mode: Numeric mode, defaults to :data:`EXACT`
    :type mode: :class:`NumericMode`
    :raises NegativeEntry: Negative or non-finite entry
    """
    ndim = 2

    def __repr__(self):
        return "MaxMatrix({0}, mode={1})".format(
            [[_format_number(x) for x in row] for row in self.tolist()],
            self.mode.name
        )

    @classmethod
    def identity(cls, n, mode=EXACT):
        """Semiring identity ``I``."""
        array = np.full((n, n), mode.zero, dtype=mode.dtype)
        for i in range(n):
            array[i, i] = mode.one
        return cls._wrap(array, mode)

    @classmethod
    def zeros(cls, rows, cols=None, mode=EXACT):
        """Matrix of semiring zeros."""
        cols = rows if cols is None else cols
        return cls._wrap(
            np.full((rows, cols), mode.zero, dtype=mode.dtype), mode
        )

    @classmethod
    def from_columns(cls, vectors):
        """Stack vectors as the columns of a matrix.

        :param vectors: Nonempty list of :class:`MaxVector`
        :rtype: :class:`MaxMatrix`
        """
        vectors = list(vectors)
        mode = vectors[0].mode
        for vector in vectors:
            _check_compatible(vectors[0], vector)
        return cls._wrap(
            np.stack([v.entries for v in vectors], axis=1), mode
        )

    @property
    def n(self):
        """Number of rows (the dimension of a square matrix)."""
        return self.shape[0]

    @property
    def is_square(self):
        """True if rows equal columns."""
        return self.shape[0] == self.shape[1]

    def require_square(self):
        """Raise :class:`DimensionMismatch` unless square."""
        if not self.is_square:
            raise DimensionMismatch(
                "Expected a square matrix, got shape {0}".format(self.shape)
            )
        return self

    def transpose(self):
        """Transposed matrix."""
        return self._wrap(self._entries.T, self.mode)

    def column(self, j):
        """Column ``j`` as a :class:`MaxVector`."""
        return MaxVector._wrap(self._entries[:, j], self.mode)

    def row(self, i):
        """Row ``i`` as a :class:`MaxVector`."""
        return MaxVector._wrap(self._entries[i, :], self.mode)

    def submatrix(self, rows, cols):
        """Matrix restricted to the given row and column indices."""
        return self._wrap(
            self._entries[np.ix_(list(rows), list(cols))], self.mode
        )

    def embedded(self, rows, cols, shape):
        """Place this matrix at ``rows x cols`` of a zero matrix of ``shape``.

        Inverse of :meth:`submatrix`.
        """
        array = np.full(shape, self.mode.zero, dtype=self.mode.dtype)
        array[np.ix_(list(rows), list(cols))] = self._entries
        return self._wrap(array, self.mode)

    def support(self):
        """Boolean array of positive entries."""
        return np.asarray(self._entries > 0, dtype=bool)

    def positive_entries(self):
        """List of the positive entries."""
        return [x for x in self._entries.ravel() if x > 0]

    def key(self):
        """Hashable snapshot of the entries (exact mode lookups)."""
        return tuple(self._entries.ravel().tolist())


class MaxVector(_Array):
    """Vector over the max-times semiring.

    :param entries: Sequence of nonnegative numbers
    :param mode: Numeric mode, defaults to :data:`EXACT`
    """
    ndim = 1

    def __repr__(self):
        return "MaxVector({0}, mode={1})".format(
            [_format_number(x) for x in self.tolist()], self.mode.name
        )

    def __len__(self):
        return self.shape[0]

    def __iter__(self):
        return iter(self._entries.tolist())

    @classmethod
    def ones(cls, n, mode=EXACT):
        """All-ones vector ``u``."""
        return cls._wrap(np.full(n, mode.one, dtype=mode.dtype), mode)

    @property
    def n(self):
        """Dimension."""
        return self.shape[0]

    @property
    def positive(self):
        """True if every entry is strictly positive."""
        return bool(np.all(self._entries > 0))

    def inverse(self):
        """Entrywise reciprocal of a positive vector."""
        if not self.positive:
            raise NegativeEntry("Only positive vectors can be inverted")
        return self._wrap(self.mode.one / self._entries, self.mode)

    def normalized(self):
        """Rescale a positive vector so that its smallest entry is 1."""
        if not self.positive:
            raise NegativeEntry("Only positive vectors can be normalized")
        return self._wrap(self._entries / min(self._entries), self.mode)


def _as_fractions(array):
    for index, value in np.ndenumerate(array):
        if not isinstance(value, fractions.Fraction):
            array[index] = fractions.Fraction(value)
    return array


def _format_number(value):
    if isinstance(value, fractions.Fraction):
        return str(value)
    return value


def lcm(a, b):
    """Least common multiple of two positive integers."""
    return a * b // math.gcd(a, b)


def _check_compatible(a, b):
    if a.mode != b.mode:
        raise ModeMismatch(
            "Mixed numeric modes {0} and {1}".format(a.mode, b.mode)
        )


def oplus(a, b):
    """Entrywise maximum ``A (+) B``.

    :param a: Left operand
    :type a: :class:`MaxMatrix` or :class:`MaxVector`
    :param b: Right operand of the same shape and mode
    :raises DimensionMismatch: Different shapes
    :raises ModeMismatch: Different modes
    """
    _check_compatible(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(
            "Cannot add shapes {0} and {1}".format(a.shape, b.shape)
        )
    return type(a)._wrap(np.maximum(a.entries, b.entries), a.mode)


def otimes(a, b):
    """Max-times product ``(A (x) B)_ij = max_k a_ik b_kj``.

    :param a: Left operand
    :type a: :class:`MaxMatrix`
    :param b: Right operand; a vector gives a vector
    :type b: :class:`MaxMatrix` or :class:`MaxVector`
    :raises DimensionMismatch: Inner dimensions differ
    :raises ModeMismatch: Different modes
    """
    _check_compatible(a, b)
    inner = a.shape[1]
    if b.shape[0] != inner:
        raise DimensionMismatch(
            "Cannot multiply shapes {0} and {1}".format(a.shape, b.shape)
        )
    left = a.entries
    right = b.entries
    if isinstance(b, MaxVector):
        return MaxVector._wrap((left * right[None, :]).max(axis=1), a.mode)
    result = np.full(
        (a.shape[0], b.shape[1]), a.mode.zero, dtype=a.mode.dtype
    )
    for k in range(inner):
        result = np.maximum(result, np.multiply.outer(left[:, k], right[k, :]))
    return MaxMatrix._wrap(result, a.mode)


def mat_power(matrix, t):
    """Max-times power ``A^t`` by binary squaring.

    :param matrix: Square matrix
    :type matrix: :class:`MaxMatrix`
    :param t: Exponent, at least 1
    :type t: int
    :rtype: :class:`MaxMatrix`
    """
    if isinstance(t, bool) or not isinstance(t, numbers.Integral) or t < 1:
        raise ValueError("Exponent must be a positive integer, got {0!r}"
                         .format(t))
    matrix.require_square()
    result = None
    base = matrix
    t = int(t)
    while t:
        if t & 1:
            result = base if result is None else otimes(result, base)
        t >>= 1
        if t:
            base = otimes(base, base)
    return result


def find_heavy_cycle(matrix):
    """Find an elementary cycle of weight greater than 1.

    For every start node, the heaviest closed walk of each length up to
    ``n`` is computed by dynamic programming. A closed walk heavier than 1
    splits into elementary cycles whose weights multiply to the walk weight,
    so one of them is heavier than 1 as well.

    :param matrix: Square matrix
    :type matrix: :class:`MaxMatrix`
    :return: Witness cycle, or None when every cycle has weight at most 1
    :rtype: :class:`Path` or None
    """
    matrix.require_square()
    mode = matrix.mode
    n = matrix.n
    entries = matrix.entries
    for start in range(n):
        weights = np.full(n, mode.zero, dtype=mode.dtype)
        weights[start] = mode.one
        history = []
        for _ in range(n):
            candidates = weights[:, None] * entries
            history.append(candidates.argmax(axis=0))
            weights = candidates.max(axis=0)
            if not mode.gt(weights[start], mode.one):
                continue
            walk = _backtrack(history, start)
            for nodes in _elementary_cycles(walk):
                cycle = Path.of(matrix, nodes)
                if mode.gt(cycle.weight, mode.one):
                    logger.debug("Heavy cycle {0}".format(cycle))
                    return cycle
    return None


def _backtrack(history, end):
    nodes = [end]
    node = end
    for predecessors in reversed(history):
        node = int(predecessors[node])
        nodes.append(node)
    nodes.reverse()
    return nodes


def _elementary_cycles(walk):
    """Split a closed walk into the elementary cycles it traverses."""
    stack = []
    position = {}
    for node in walk:
        if node in position:
            start = position[node]
            yield stack[start:] + [node]
            for dropped in stack[start + 1:]:
                del position[dropped]
            del stack[start + 1:]
        else:
            position[node] = len(stack)
            stack.append(node)


def kleene_star(matrix):
    """Kleene star ``A* = I (+) A (+) A^2 (+) ...``.

    Converges exactly when no cycle is heavier than 1, and then equals
    ``(I (+) A)^(n-1) = I (+) A (+) ... (+) A^(n-1)``. Entry ``(i, j)``,
    ``i != j``, is the greatest weight of a path from ``i`` to ``j``.

    :param matrix: Square matrix
    :type matrix: :class:`MaxMatrix`
    :raises Divergent: Some cycle has weight above 1; carries the cycle
    :rtype: :class:`MaxMatrix`
    """
    matrix.require_square()
    cycle = find_heavy_cycle(matrix)
    if cycle is not None:
        raise Divergent(
            "Kleene star diverges: cycle {0} has weight {1} > 1"
            .format(cycle.nodes, cycle.weight),
            cycle
        )
    identity = MaxMatrix.identity(matrix.n, matrix.mode)
    if matrix.n == 1:
        return identity
    return mat_power(oplus(identity, matrix), matrix.n - 1)


def entrywise_div(numerator, denominator):
    """Entrywise quotient ``B / C`` with ``0 / 0 = 0``.

    :param numerator: ``B``
    :type numerator: :class:`MaxMatrix`
    :param denominator: ``C``, positive wherever ``B`` is
    :type denominator: :class:`MaxMatrix`
    :raises UndefinedDivision: ``b_ij > 0`` while ``c_ij = 0``
    :rtype: :class:`MaxMatrix`
    """
    _check_compatible(numerator, denominator)
    if numerator.shape != denominator.shape:
        raise DimensionMismatch(
            "Cannot divide shapes {0} and {1}"
            .format(numerator.shape, denominator.shape)
        )
    mode = numerator.mode
    result = np.full(numerator.shape, mode.zero, dtype=mode.dtype)
    for index, top in np.ndenumerate(numerator.entries):
        bottom = denominator.entries[index]
        if bottom > 0:
            result[index] = top / bottom
        elif top > 0:
            raise UndefinedDivision(index)
    return MaxMatrix._wrap(result, mode)


def left_residual(v, w):
    """Greatest ``X`` with ``V (x) X <= W``.

    ``x_ij = min_k { w_kj / v_ki : v_ki > 0 }``.

    :param v: ``m x k`` matrix without zero columns
    :type v: :class:`MaxMatrix`
    :param w: ``m x p`` matrix
    :type w: :class:`MaxMatrix`
    :raises NoConstraint: Column ``i`` of ``V`` is zero
    :return: ``k x p`` residual
    :rtype: :class:`MaxMatrix`
    """
    _check_compatible(v, w)
    if v.shape[0] != w.shape[0]:
        raise DimensionMismatch(
            "Residual needs equal row counts, got {0} and {1}"
            .format(v.shape, w.shape)
        )
    mode = v.mode
    rows, cols = v.shape[1], w.shape[1]
    result = np.empty((rows, cols), dtype=mode.dtype)
    for i in range(rows):
        support = [k for k in range(v.shape[0]) if v.entries[k, i] > 0]
        if not support:
            raise NoConstraint(i)
        for j in range(cols):
            result[i, j] = min(
                w.entries[k, j] / v.entries[k, i] for k in support
            )
    return MaxMatrix._wrap(result, mode)


def exponent_of(value, mode, base=None):
    """Max-plus image ``log_b a`` of one scalar, ``-inf`` for zero.

    :param value: Nonnegative scalar of ``mode``
    :param mode: Numeric mode of ``value``
    :type mode: :class:`NumericMode`
    :param base: Logarithm base; natural in float mode, 2 in exact mode
    :raises ExactnessError: Exact mode and ``value`` is not an integer
        power of ``base``
    """
    if value == 0:
        return float("-inf")
    if mode.exact:
        if base is None:
            base = DEFAULT_EXACT_BASE
        return _exact_log(value, base)
    if base is None:
        return math.log(value)
    return math.log(value, float(base))


def to_max_plus(matrix, base=None):
    """Map a max-times matrix to the max-plus domain.

    ``0`` becomes ``-inf`` and ``a`` becomes ``log a``. Float mode uses the
    natural logarithm unless ``base`` is given. Exact mode needs every
    positive entry to be an integer power of ``base`` (default 2).

    :param matrix: Max-times matrix
    :type matrix: :class:`MaxMatrix`
    :param base: Logarithm base
    :raises ExactnessError: Exact mode and a logarithm is not an integer
    :return: Array of exponents (``-inf`` for zero)
    :rtype: numpy.ndarray
    """
    result = np.empty(matrix.shape, dtype=matrix.mode.dtype)
    for index, value in np.ndenumerate(matrix.entries):
        result[index] = exponent_of(value, matrix.mode, base)
    return result


def _is_minus_infinity(value):
    if isinstance(value, str):
        return value.strip() == "-inf"
    return isinstance(value, float) and value == float("-inf")


class MaxPlusMatrix(object):
    """Matrix of max-plus exponents ``e_ij = log_b a_ij``.

    Exact exponents stay rational, so ``b ** e_ij`` may be irrational. The
    analyses run on the lift ``L = (b ** (d e_ij))`` where ``d`` is the
    least common denominator of the finite exponents. ``x -> x ** d``
    preserves max and products, so ``L`` has the digraph, critical graph
    and power pattern of ``A``, and ``lambda(A) = lambda(L) ** (1 / d)``.

    :param exponents: Nested sequence of numbers, ``-inf`` for zero
    :param mode: Numeric mode, defaults to :data:`EXACT`
    :type mode: :class:`NumericMode`
    :param base: Exponential base; natural in float mode, 2 in exact mode
    :raises NegativeEntry: Non-numeric or non-finite exponent
    """

    def __init__(self, exponents, mode=EXACT, base=None):
        super(MaxPlusMatrix, self).__init__()
        raw = np.asarray(exponents, dtype=object)
        if raw.ndim != 2 or 0 in raw.shape:
            raise DimensionMismatch(
                "Expected a nonempty 2-dimensional array, got shape {0}"
                .format(raw.shape)
            )
        if base is not None:
            base = fractions.Fraction(base) if mode.exact else float(base)
            if base <= 0 or base == 1:
                raise ValueError("Invalid exponential base {0}".format(base))
        elif mode.exact:
            base = fractions.Fraction(DEFAULT_EXACT_BASE)
        array = np.empty(raw.shape, dtype=mode.dtype)
        root = 1
        for index, value in np.ndenumerate(raw):
            if _is_minus_infinity(value):
                array[index] = float("-inf")
                continue
            try:
                array[index] = mode.coerce(value)
            except (TypeError, ValueError, ZeroDivisionError):
                raise NegativeEntry(
                    "Invalid exponent {0!r} at {1}".format(value, index)
                )
            if mode.exact:
                root = lcm(root, array[index].denominator)
        array.setflags(write=False)
        self._exponents = array
        self.mode = mode
        self.base = base
        self.root = root

    def __repr__(self):
        return "MaxPlusMatrix({0}, mode={1}, base={2})".format(
            [[_format_number(x) for x in row] for row in self.tolist()],
            self.mode.name, self.base
        )

    def __eq__(self, other):
        if not isinstance(other, MaxPlusMatrix):
            return NotImplemented
        if (self.shape, self.mode, self.base) != (
                other.shape, other.mode, other.base):
            return False
        for mine, theirs in zip(self._exponents.ravel(),
                                other.exponents.ravel()):
            if _is_minus_infinity(mine) or _is_minus_infinity(theirs):
                if mine != theirs:
                    return False
            elif not self.mode.eq(mine, theirs):
                return False
        return True

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    @property
    def exponents(self):
        """Read-only array of exponents, ``-inf`` for zero."""
        return self._exponents

    @property
    def shape(self):
        """Array shape."""
        return self._exponents.shape

    @property
    def n(self):
        """Number of rows."""
        return self.shape[0]

    def require_square(self):
        """Raise :class:`DimensionMismatch` unless square."""
        if self.shape[0] != self.shape[1]:
            raise DimensionMismatch(
                "Expected a square matrix, got shape {0}".format(self.shape)
            )
        return self

    def tolist(self):
        """Exponents as nested Python lists."""
        return self._exponents.tolist()

    def lift(self, root=None):
        """Max-times matrix ``(b ** (root e_ij))``, exact for any multiple
        of :attr:`root`.

        :param root: Power to lift by, defaults to :attr:`root`
        :type root: int, optional
        :raises ValueError: ``root`` is not a multiple of :attr:`root`
        :rtype: :class:`MaxMatrix`
        """
        root = self.root if root is None else int(root)
        if root < 1 or root % self.root:
            raise ValueError(
                "Lift power {0} is not a multiple of {1}"
                .format(root, self.root)
            )
        mode = self.mode
        result = np.empty(self.shape, dtype=mode.dtype)
        for index, exponent in np.ndenumerate(self._exponents):
            if _is_minus_infinity(exponent):
                result[index] = mode.zero
            elif mode.exact:
                result[index] = self.base ** int(exponent * root)
            elif self.base is None:
                result[index] = math.exp(exponent * root)
            else:
                result[index] = self.base ** (exponent * root)
        return MaxMatrix._wrap(result, mode)

    def to_max_times(self):
        """The max-times matrix ``(b ** e_ij)``.

        :raises ExactnessError: Exact mode and a non-integer exponent
        :rtype: :class:`MaxMatrix`
        """
        if self.root != 1:
            raise ExactnessError(
                "Exponents with denominator {0} have no exact max-times "
                "image; analyse the max-plus matrix or use float mode"
                .format(self.root)
            )
        return self.lift(1)


def from_max_plus(values, mode=EXACT, base=None):
    """Map max-plus exponents back to a max-times matrix.

    :param values: 2-D array of exponents with ``-inf`` as zero
    :param mode: Target numeric mode
    :type mode: :class:`NumericMode`
    :param base: Exponential base; natural in float mode, 2 in exact mode
    :raises ExactnessError: Exact mode and a non-integer exponent; keep
        such data as a :class:`MaxPlusMatrix`
    :rtype: :class:`MaxMatrix`
    """
    return MaxPlusMatrix(values, mode, base).to_max_times()


def max_times_view(matrix):
    """Max-times matrix to analyse and the power it was lifted by.

    :param matrix: :class:`MaxMatrix` or :class:`MaxPlusMatrix`
    :rtype: tuple
    """
    if isinstance(matrix, MaxPlusMatrix):
        return matrix.lift(), matrix.root
    return matrix, 1


def semiring_convert(data, target, mode=EXACT, base=None):
    """Convert between the max-times and max-plus domains.

    :param data: :class:`MaxMatrix` for ``target="max-plus"``, exponent
        array for ``target="max-times"``
    :param target: :data:`MAX_TIMES` or :data:`MAX_PLUS`
    :type target: str
    :param mode: Mode of the result when converting to max-times
    :param base: Logarithm base, see :func:`to_max_plus`
    """
    if target == MAX_PLUS:
        return to_max_plus(data, base=base)
    if target == MAX_TIMES:
        return from_max_plus(data, mode=mode, base=base)
    raise ValueError("Unknown semiring {0!r}".format(target))


def _log(value):
    value = fractions.Fraction(value)
    return math.log(value.numerator) - math.log(value.denominator)


def _exact_log(value, base):
    base = fractions.Fraction(base)
    if base <= 0 or base == 1:
        raise ValueError("Invalid logarithm base {0}".format(base))
    guess = int(round(_log(value) / _log(base)))
    for exponent in (guess, guess - 1, guess + 1):
        if base ** exponent == value:
            return fractions.Fraction(exponent)
    raise ExactnessError(
        "{0} is not an integer power of {1}; use float mode"
        .format(value, base)
    )
