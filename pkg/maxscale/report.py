"""Analysis reports

One report per command-line invocation::

    {
        "command": "eigen",
        "argv": ["eigen", "A.mx"],
        "inputs": {"A.mx": "<sha256>"},
        "domain": "max-times",
        "results": {...},
        "warnings": [],
        "exit_code": 0
    }

Exact numbers are written as ``"p/q"`` strings (``"p"`` for integers) and
nodes are numbered from 1. Reports on max-plus input give every semiring
value as its exponent, ``"-inf"`` for zero. The envelope is described by
the JSON schema ``report.schema.json`` shipped with the package.
"""
import collections
import fractions
import hashlib
import json
import math
import os

import numpy as np

from .scaling import DiagonalScaling
from .semiring import (
    MAX_PLUS, MAX_TIMES, MaxMatrix, MaxPlusMatrix, MaxVector, Path,
    exponent_of
)
from .spectral import CycleMean


SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "report.schema.json")


def load_schema():
    """The JSON schema every report validates against."""
    with open(SCHEMA_PATH, "r") as handle:
        return json.load(handle)


def one_based(nodes):
    """Shift node indices to 1-based numbering."""
    return [int(node) + 1 for node in nodes]


def one_based_edges(edges):
    """Sorted 1-based ``[i, j]`` edge pairs."""
    return [[int(i) + 1, int(j) + 1] for i, j in sorted(edges)]


def digest(text):
    """Hex SHA-256 of file contents."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class Exponents(object):
    """Writes values computed on a lifted max-plus matrix as exponents.

    :param mode: Numeric mode of the lifted values
    :type mode: :class:`maxscale.semiring.NumericMode`
    :param base: Exponential base, None for the natural one in float mode
    :param root: Power the input exponents were lifted by
    :type root: int
    """

    def __init__(self, mode, base=None, root=1):
        super(Exponents, self).__init__()
        self.mode = mode
        self.base = base
        self.root = int(root)

    def __repr__(self):
        return "Exponents(base={0}, root={1})".format(self.base, self.root)

    def scalar(self, value):
        """Exponent of a lifted scalar, ``-inf`` for zero.

        :raises ExactnessError: Exact mode and ``value`` is not a power of
            the base
        """
        return exponent_of(value, self.mode, self.base) / self.root

    def lift(self, exponent):
        """Lifted max-times scalar of an exponent."""
        if self.mode.exact:
            power = self.mode.coerce(exponent) * self.root
            return self.base ** int(power)
        if self.base is None:
            return math.exp(float(exponent) * self.root)
        return float(self.base) ** (float(exponent) * self.root)

    def mean(self, mean):
        """Exponent of a mean computed on the lift."""
        return mean.exponent(self.base) / self.root


def _vector(values, exponents):
    if exponents is None:
        return values
    return [exponents.scalar(x) for x in values]


def _matrix(rows, exponents):
    if exponents is None:
        return rows
    return [[exponents.scalar(x) for x in row] for row in rows]


def jsonable(value, exponents=None):
    """Convert library values into JSON-ready Python objects.

    :param value: Result value
    :param exponents: Write semiring values as exponents of lifted
        max-plus input
    :type exponents: :class:`Exponents`, optional
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, fractions.Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "-inf" if value < 0 else "inf"
        return value
    if isinstance(value, MaxMatrix):
        return jsonable(_matrix(value.tolist(), exponents))
    if isinstance(value, (MaxVector, DiagonalScaling)):
        return jsonable(_vector(value.tolist(), exponents))
    if isinstance(value, MaxPlusMatrix):
        return jsonable(value.tolist())
    if isinstance(value, Path):
        weight = value.weight
        if exponents is not None:
            weight = exponents.scalar(weight)
        return collections.OrderedDict([
            ("nodes", one_based(value.nodes)),
            ("weight", jsonable(weight)),
            ("length", value.length),
        ])
    if isinstance(value, CycleMean):
        return _mean(value, exponents)
    if isinstance(value, dict):
        return collections.OrderedDict(
            (str(key), jsonable(item, exponents))
            for key, item in value.items()
        )
    if isinstance(value, (set, frozenset)):
        return [jsonable(item, exponents) for item in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [jsonable(item, exponents) for item in value]
    raise TypeError("Cannot serialize {0!r}".format(value))


def _mean(mean, exponents):
    if exponents is None:
        weight = mean.weight
        value = mean.value if mean.is_rational else None
        approx = mean.approx
    else:
        weight = exponents.scalar(mean.weight)
        value = exponents.mean(mean)
        approx = float(value)
    return collections.OrderedDict([
        ("weight", jsonable(weight)),
        ("length", mean.length),
        ("value", jsonable(value)),
        ("approx", jsonable(approx)),
    ])


class AnalysisReport(object):
    """Structured result of one command.

    :param command: Subcommand name
    :type command: str
    :param argv: Arguments as given
    :type argv: list of str
    """

    def __init__(self, command, argv):
        super(AnalysisReport, self).__init__()
        self.command = command
        self.argv = list(argv)
        self.inputs = collections.OrderedDict()
        self.domain = MAX_TIMES
        self.exponents = None
        self.results = collections.OrderedDict()
        self.warnings = []
        self.exit_code = 0

    def __repr__(self):
        return "AnalysisReport({0}, exit_code={1})".format(
            self.command, self.exit_code
        )

    def add_input(self, path, text):
        """Record an input file by its digest."""
        self.inputs[path] = digest(text)

    def use_exponents(self, exponents):
        """Report semiring values of max-plus input as exponents.

        :type exponents: :class:`Exponents`
        """
        self.domain = MAX_PLUS
        self.exponents = exponents

    def warn(self, message):
        """Record a warning."""
        self.warnings.append(message)

    def to_dict(self):
        """The report as plain JSON-ready data."""
        return collections.OrderedDict([
            ("command", self.command),
            ("argv", self.argv),
            ("inputs", dict(self.inputs)),
            ("domain", self.domain),
            ("results", jsonable(self.results, self.exponents)),
            ("warnings", list(self.warnings)),
            ("exit_code", self.exit_code),
        ])

    def to_json(self):
        """The report as an indented JSON document."""
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        """Human-readable rendering: scalars inline, matrices as tables."""
        lines = ["{0}: exit code {1}".format(self.command, self.exit_code)]
        for key, value in jsonable(self.results, self.exponents).items():
            lines.extend(_render(key, value, 0))
        for message in self.warnings:
            lines.append("warning: {0}".format(message))
        return "\n".join(lines)


def _is_table(value):
    return (
        isinstance(value, list) and value
        and all(isinstance(row, list) and row for row in value)
        and all(not isinstance(x, (list, dict)) for row in value for x in row)
    )


def _render(key, value, depth):
    indent = "  " * depth
    if isinstance(value, dict):
        lines = ["{0}{1}:".format(indent, key)]
        for child, item in value.items():
            lines.extend(_render(child, item, depth + 1))
        return lines
    if _is_table(value):
        cells = [[_cell(x) for x in row] for row in value]
        width = max(len(cell) for row in cells for cell in row)
        lines = ["{0}{1}:".format(indent, key)]
        for row in cells:
            lines.append("{0}  {1}".format(
                indent, " ".join(cell.rjust(width) for cell in row)
            ))
        return lines
    if isinstance(value, list) and any(isinstance(x, dict) for x in value):
        lines = ["{0}{1}:".format(indent, key)]
        for number, item in enumerate(value, 1):
            lines.extend(_render("[{0}]".format(number), item, depth + 1))
        return lines
    if isinstance(value, list):
        return ["{0}{1}: {2}".format(
            indent, key, " ".join(_cell(x) for x in value)
        )]
    return ["{0}{1}: {2}".format(indent, key, _cell(value))]


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return "{0:.6g}".format(value)
    return str(value)
