"""Exceptions

Every failure raised by :mod:`maxscale` derives from :class:`MaxScaleError`.
Each class carries the exit code the command-line front end reports for it:

* ``1``: a negative mathematical answer (no scaling exists, the star
  diverges, the bound does not apply, ...). These are answers, not bugs.
* ``2``: usage, parse and precondition errors.
* ``3``: numeric mode problems, such as an irrational eigenvalue in exact
  mode, or a certificate that could not be verified.
"""


class MaxScaleError(Exception):
    """Base class for all library errors."""
    exit_code = 2


class NegativeAnswer(MaxScaleError):
    """The question asked has a negative answer."""
    exit_code = 1


class DimensionMismatch(MaxScaleError):
    """Operands have incompatible shapes."""


class ModeMismatch(MaxScaleError):
    """Operands use different numeric modes."""


class NegativeEntry(MaxScaleError):
    """A max-times matrix received a negative or non-finite entry."""


class UndefinedDivision(MaxScaleError):
    """A positive entry was divided by a zero entry.

    :param position: ``(i, j)`` of the offending entry
    :type position: tuple
    """

    def __init__(self, position):
        super(UndefinedDivision, self).__init__(
            "Positive entry over zero at {0}".format(position)
        )
        self.position = position


class NoConstraint(MaxScaleError):
    """A residual row is unbounded because a column of the divisor is zero.

    :param index: Index of the zero column
    :type index: int
    """

    def __init__(self, index):
        super(NoConstraint, self).__init__(
            "Column {0} of the divisor is zero; residual unbounded"
            .format(index)
        )
        self.index = index


class ExactnessError(MaxScaleError):
    """The answer is not representable in exact rational arithmetic."""
    exit_code = 3


class ExactnessUnavailable(ExactnessError):
    """An algorithm met an irrational intermediate value in exact mode."""


class CertificationFailure(MaxScaleError):
    """A result failed its own verification step."""
    exit_code = 3


class EnumerationBudget(MaxScaleError):
    """The graph is too large for brute-force enumeration."""


class SizeLimit(MaxScaleError):
    """The matrix is too large for an exhaustive check."""


class IterationBudget(MaxScaleError):
    """An iteration cap was reached before the answer was found."""


class NotOnCycle(MaxScaleError):
    """A node that must lie on a cycle does not.

    :param node: Offending node
    :type node: int
    """

    def __init__(self, node):
        super(NotOnCycle, self).__init__(
            "Node {0} does not lie on any cycle".format(node)
        )
        self.node = node


class AcyclicMatrix(MaxScaleError):
    """The digraph of the matrix has no cycles, so its cycle mean is zero."""


class NotIrreducible(MaxScaleError):
    """The digraph of the matrix is not strongly connected."""


class NotNormalized(MaxScaleError):
    """The maximum cycle geometric mean is not 1."""


class ZeroDiagonal(MaxScaleError):
    """A diagonal entry required to be nonzero is zero.

    :param index: Index of the zero diagonal entry
    :type index: int
    """

    def __init__(self, index):
        super(ZeroDiagonal, self).__init__(
            "Diagonal entry {0} is zero".format(index)
        )
        self.index = index


class PatternViolation(MaxScaleError):
    """Digraph inclusion between the matrices of a triple fails.

    :param triple: Index of the triple
    :type triple: int
    :param position: ``(i, j)`` of the first offending edge
    :type position: tuple
    """

    def __init__(self, triple, position, message):
        super(PatternViolation, self).__init__(message)
        self.triple = triple
        self.position = position


class NotAnFpScaling(MaxScaleError):
    """The supplied vector does not scale all entries to at most 1."""


class PreconditionError(MaxScaleError):
    """An input violates the stated precondition of an operation."""


class WitnessNotFound(MaxScaleError):
    """A cycle guaranteed by theory was not found; the input is invalid."""


class MatrixFileError(MaxScaleError):
    """Malformed matrix file.

    :param message: What went wrong
    :type message: str
    :param line: 1-based line number, if known
    :type line: int
    :param column: 1-based token column, if known
    :type column: int
    """

    def __init__(self, message, line=None, column=None):
        location = ""
        if line is not None:
            location = "line {0}".format(line)
            if column is not None:
                location = "{0}, column {1}".format(location, column)
            location = " ({0})".format(location)
        super(MatrixFileError, self).__init__(
            "{0}{1}".format(message, location)
        )
        self.line = line
        self.column = column


class _CycleAnswer(NegativeAnswer):
    """Negative answer certified by a cycle."""

    def __init__(self, message, cycle):
        super(_CycleAnswer, self).__init__(message)
        self.cycle = cycle

    @property
    def weight(self):
        """Weight of the witness cycle."""
        return self.cycle.weight


class Divergent(_CycleAnswer):
    """The Kleene star diverges; ``cycle`` has weight above 1."""


class NoScaling(_CycleAnswer):
    """No (strong) FP scaling exists; ``cycle`` is the obstruction."""


class HadamardFailure(_CycleAnswer):
    """A cyclic product of off-diagonal entries exceeds the diagonal one.

    :param cycle: Witness cycle, weighted by absolute entries of ``B``
    :param diagonal_product: Product of ``|b_kk|`` along the cycle
    """

    def __init__(self, message, cycle, diagonal_product):
        super(HadamardFailure, self).__init__(message, cycle)
        self.diagonal_product = diagonal_product


class Inapplicable(NegativeAnswer):
    """The transient bound does not apply to this matrix."""


class NotCommuting(NegativeAnswer):
    """The two matrices do not commute."""
