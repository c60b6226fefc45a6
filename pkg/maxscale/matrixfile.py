"""Matrix files

Plain text, ``#`` starts a comment::

    # header: domain, dimension, mode and an optional base
    maxtimes 2 exact
    .   2
    1/4 .

``domain`` is ``maxtimes`` or ``maxplus``. The semiring zero is ``.`` (or
``0``) in max-times files and ``-inf`` in max-plus files. Numbers are
decimals or fractions ``p/q``. Max-plus files stay in the additive domain
as a :class:`maxscale.semiring.MaxPlusMatrix` of exponents (natural base in
float mode, ``base=2`` by default in exact mode).
"""
import fractions
import logging

from .errors import MatrixFileError, NegativeEntry
from .semiring import (
    DEFAULT_EXACT_BASE, EXACT, FLOAT, MAX_PLUS, MAX_TIMES, MaxMatrix,
    MaxPlusMatrix, to_max_plus
)

logger = logging.getLogger("maxscale")

DOMAINS = {
    "maxtimes": MAX_TIMES,
    "max-times": MAX_TIMES,
    "maxplus": MAX_PLUS,
    "max-plus": MAX_PLUS,
}
MODES = ("exact", "float")
ZERO_TOKENS = {MAX_TIMES: (".", "0"), MAX_PLUS: ("-inf",)}


class MatrixFile(object):
    """Parsed matrix file.

    :param domain: :data:`maxscale.semiring.MAX_TIMES` or ``MAX_PLUS``
    :param mode: Numeric mode of the matrix
    :param matrix: :class:`maxscale.semiring.MaxMatrix` of a max-times file,
        :class:`maxscale.semiring.MaxPlusMatrix` of a max-plus file
    :param base: Exponential base of a max-plus file, if any
    """

    def __init__(self, domain, mode, matrix, base=None):
        super(MatrixFile, self).__init__()
        self.domain = domain
        self.mode = mode
        self.matrix = matrix
        self.base = base

    def __repr__(self):
        return "MatrixFile({0}, n={1}, {2})".format(
            self.domain, self.n, self.mode.name
        )

    @property
    def n(self):
        return self.matrix.n


def _lines(text):
    for number, line in enumerate(text.splitlines(), 1):
        content = line.split("#", 1)[0].split()
        if content:
            yield number, content


def _parse_header(number, tokens):
    if len(tokens) not in (3, 4):
        raise MatrixFileError(
            "Header must read '<domain> <n> <mode> [base=<b>]'", number
        )
    domain = DOMAINS.get(tokens[0].lower())
    if domain is None:
        raise MatrixFileError(
            "Unknown domain {0!r}".format(tokens[0]), number, 1
        )
    try:
        n = int(tokens[1])
    except ValueError:
        n = 0
    if n < 1:
        raise MatrixFileError(
            "Dimension must be a positive integer, got {0!r}"
            .format(tokens[1]), number, 2
        )
    if tokens[2].lower() not in MODES:
        raise MatrixFileError(
            "Mode must be 'exact' or 'float', got {0!r}".format(tokens[2]),
            number, 3
        )
    base = None
    if len(tokens) == 4:
        key, _, value = tokens[3].partition("=")
        try:
            base = fractions.Fraction(value)
        except (ValueError, ZeroDivisionError):
            base = None
        if key != "base" or base is None or base <= 0 or base == 1:
            raise MatrixFileError(
                "Expected 'base=<b>' with b > 0, b != 1, got {0!r}"
                .format(tokens[3]), number, 4
            )
    return domain, n, tokens[2].lower(), base


def _parse_token(token, domain, signed, number, column):
    if token in ZERO_TOKENS.get(domain, ()):
        return float("-inf") if domain == MAX_PLUS else fractions.Fraction(0)
    try:
        value = fractions.Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise MatrixFileError(
            "Invalid number {0!r}".format(token), number, column
        )
    if domain == MAX_TIMES and not signed and value < 0:
        raise MatrixFileError(
            "Negative entry {0!r} in a max-times matrix".format(token),
            number, column
        )
    return value


def _parse_rows(text, signed=False):
    lines = list(_lines(text))
    if not lines:
        raise MatrixFileError("Empty matrix file")
    header_line, header = lines[0]
    domain, n, mode_name, base = _parse_header(header_line, header)
    rows = lines[1:]
    if len(rows) != n:
        raise MatrixFileError(
            "Expected {0} rows, found {1}".format(n, len(rows)),
            rows[-1][0] if rows else header_line
        )
    values = []
    for number, tokens in rows:
        if len(tokens) != n:
            raise MatrixFileError(
                "Expected {0} entries, found {1}".format(n, len(tokens)),
                number, min(len(tokens), n) + 1
            )
        values.append([
            _parse_token(token, domain, signed, number, column)
            for column, token in enumerate(tokens, 1)
        ])
    return domain, mode_name, base, values


def _resolve_mode(mode_name, mode):
    if mode is not None:
        return mode
    return EXACT if mode_name == "exact" else FLOAT


def parse_matrix_file(text, mode=None, base=None):
    """Parse matrix file text.

    :param text: File contents
    :type text: str
    :param mode: Override the header mode
    :type mode: :class:`maxscale.semiring.NumericMode`, optional
    :param base: Override the header base of a max-plus file
    :raises MatrixFileError: Malformed file, with line and column
    :rtype: :class:`MatrixFile`
    """
    domain, mode_name, header_base, values = _parse_rows(text)
    mode = _resolve_mode(mode_name, mode)
    if base is None:
        base = header_base
    if domain == MAX_PLUS:
        try:
            matrix = MaxPlusMatrix(values, mode, base)
        except (ValueError, ZeroDivisionError) as error:
            raise MatrixFileError(
                "Invalid base {0!r}: {1}".format(base, error)
            )
        base = matrix.base
    else:
        try:
            matrix = MaxMatrix(values, mode)
        except NegativeEntry as error:
            raise MatrixFileError(str(error))
    logger.debug("Parsed {0}x{0} {1} matrix in {2} mode".format(
        matrix.n, domain, mode.name
    ))
    return MatrixFile(domain, mode, matrix, base)


def parse_matrix(text, mode=None, base=None):
    """Parse matrix file text into a matrix of its declared domain.

    :rtype: :class:`maxscale.semiring.MaxMatrix` or
        :class:`maxscale.semiring.MaxPlusMatrix`
    """
    return parse_matrix_file(text, mode=mode, base=base).matrix


def parse_real_matrix(text, mode=None):
    """Parse a max-times style file whose entries may be negative.

    :return: Rows of signed numbers and the numeric mode
    :rtype: tuple
    """
    domain, mode_name, _, values = _parse_rows(text, signed=True)
    if domain != MAX_TIMES:
        raise MatrixFileError("Real matrices use the 'maxtimes' header")
    mode = _resolve_mode(mode_name, mode)
    return [[mode.coerce(v) for v in row] for row in values], mode


def read_matrix_file(path, mode=None, base=None):
    """Read and parse a matrix file from disk.

    :raises MatrixFileError: Unreadable or malformed file
    :rtype: :class:`MatrixFile`
    """
    return parse_matrix_file(read_text(path), mode=mode, base=base)


def read_text(path):
    """File contents, wrapping I/O failures in :class:`MatrixFileError`."""
    try:
        with open(path, "r") as handle:
            return handle.read()
    except (IOError, OSError) as error:
        raise MatrixFileError("Cannot read {0}: {1}".format(path, error))


def _format_token(value):
    if isinstance(value, fractions.Fraction):
        return str(value)
    return repr(float(value))


def serialize_matrix(matrix, domain=MAX_TIMES, base=None):
    """Matrix file text; :func:`parse_matrix` reads it back unchanged.

    A :class:`maxscale.semiring.MaxPlusMatrix` is written as it is, with
    its own base.

    :param matrix: Square matrix
    :type matrix: :class:`maxscale.semiring.MaxMatrix` or
        :class:`maxscale.semiring.MaxPlusMatrix`
    :param domain: Domain written to the header
    :param base: Max-plus base (exact mode defaults to 2)
    :raises ExactnessError: Exact max-plus output of a non-power entry
    :rtype: str
    """
    matrix.require_square()
    mode = matrix.mode
    if isinstance(matrix, MaxPlusMatrix):
        domain = MAX_PLUS
        values = matrix.exponents
        base = matrix.base
        if mode.exact and base == DEFAULT_EXACT_BASE:
            base = None
    elif domain == MAX_PLUS:
        values = to_max_plus(matrix, base=base)
    if domain == MAX_PLUS:
        header = "maxplus {0} {1}".format(matrix.n, mode.name)
        if base is not None:
            header = "{0} base={1}".format(header, base)
        zero = "-inf"
    elif domain == MAX_TIMES:
        values = matrix.entries
        header = "maxtimes {0} {1}".format(matrix.n, mode.name)
        zero = "."
    else:
        raise ValueError("Unknown domain {0!r}".format(domain))
    lines = [header]
    for row in values:
        lines.append(" ".join(
            zero if (value == 0 and domain == MAX_TIMES)
            or value == float("-inf") else _format_token(value)
            for value in row
        ))
    return "\n".join(lines) + "\n"
