"""Entry point for CLI"""
import argparse
import fractions
import logging
import random
import sys

from . import __version__
from .asymptotics import (
    csr_decompose, nachtigall_expansion, normalize_to_unit,
    transient_and_period, transient_bound
)
from .balancing import max_balance
from .commuting import (
    boolean_saturation_pair, common_eigenvector, commutes,
    commuting_cycle_witness
)
from .digraph import digraph_of, scc, threshold_digraph, threshold_spectrum
from .errors import (
    ExactnessUnavailable, HadamardFailure, MaxScaleError, NotCommuting,
    PreconditionError
)
from .matrixfile import parse_matrix_file, parse_real_matrix, read_text
from .report import (
    AnalysisReport, Exponents, jsonable, one_based, one_based_edges
)
from .scaling import (
    apply_scaling, eigenvector_scaling, fp_scaling, hadamard_scaling_test,
    row_col_maxima_scalings, sandwich_scalings, strong_fp_scaling
)
from .semiring import (
    DEFAULT_TOLERANCE, EXACT, MAX_PLUS, float_mode, kleene_star, lcm
)
from .spectral import (
    critical_graph, eigenspace_basis, is_irreducible, max_cycle_gmean,
    principal_eigenvector
)

LOG_LEVELS = [logging.ERROR, logging.WARNING, logging.INFO, logging.DEBUG]

logger = logging.getLogger("maxscale")


def log(verbosity, log_file=None):
    """Setup logger to console and, optionally, a file.

    :param verbosity: Verbosity level from arguments. Range 0 - 3
    :type verbosity: int
    :param log_file: Path of a debug log file, defaults to None
    :type log_file: str, optional
    """
    logger.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter("%(message)s"))
    console_handler.setLevel(LOG_LEVELS[verbosity])
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(
                fmt="%(asctime)s: %(levelname)s: [%(name)s]: %(message)s"
            )
        )
        logger.addHandler(file_handler)
    return log_file


def _common_arguments():
    common = argparse.ArgumentParser(add_help=False)
    modes = common.add_mutually_exclusive_group(required=False)
    modes.add_argument(
        "--exact",
        dest="mode",
        action="store_const",
        const="exact",
        help="Exact rational arithmetic, overriding the file header"
    )
    modes.add_argument(
        "--float",
        dest="mode",
        action="store_const",
        const="float",
        help="Floating point arithmetic, overriding the file header"
    )
    common.add_argument(
        "--tol",
        type=float,
        default=DEFAULT_TOLERANCE,
        metavar="EPS",
        help="Relative tolerance of float comparisons"
    )
    common.add_argument(
        "--json",
        action="store_true",
        help="Print the report as JSON"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Seed for sampled scalings"
    )
    common.add_argument(
        "--budget",
        type=int,
        metavar="T",
        help=(
            "Iteration cap for power searches. powers, csr and bound search "
            "until periodicity without it; nachtigall defaults to "
            "3n^2 + 2*gamma"
        )
    )
    common.add_argument(
        "--base",
        type=str,
        metavar="B",
        help="Exponential base of max-plus input, overriding the header"
    )
    common.add_argument(
        "-v",
        "--verbosity",
        type=int,
        metavar="LEVEL",
        help=(
            "Logger output to the terminal. Ranges from 0-3, 3 being the most "
            "verbose"
        ),
        default=1,
        choices=range(4)
    )
    common.add_argument(
        "--log-file",
        type=str,
        metavar="PATH",
        help="Also write a debug log to this file"
    )
    return common


def build_argument_parser():
    """Create the argument parser for the command-line utility.

    :return: Argument Parser
    :rtype: :class:`argparse.ArgumentParser`
    """
    parser = argparse.ArgumentParser(
        prog="maxscale",
        description=(
            "Diagonal scaling, spectral and matrix-power analysis in the "
            "max-times semiring."
        )
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    common = _common_arguments()
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def command(name, help_text):
        sub = commands.add_parser(
            name, parents=[common], help=help_text, description=help_text
        )
        sub.set_defaults(handler=HANDLERS[name])
        return sub

    command("info", "Summary: digraph components and lambda(A)")\
        .add_argument("matrix", help="Matrix file")
    command("star", "Kleene star A* or a heavy cycle")\
        .add_argument("matrix", help="Matrix file")
    command("eigen", "Maximum cycle mean, critical graph, eigenvectors")\
        .add_argument("matrix", help="Matrix file")

    scale = command("scale", "Diagonal scalings of one matrix")
    scale.add_argument(
        "kind",
        choices=["fp", "strong", "eig", "rowcol", "balance"],
        help="Scaling problem"
    )
    scale.add_argument("matrix", help="Matrix file")

    command(
        "sandwich", "Scalings with A_i <= X^-1 B_i X <= C_i"
    ).add_argument(
        "matrices",
        nargs="+",
        help="Matrix files in groups of three: A1 B1 C1 [A2 B2 C2 ...]"
    )
    command(
        "hadamard", "Diagonal scaling making a real matrix diagonally dominant"
    ).add_argument("matrix", help="Real matrix file (signed entries)")
    command("powers", "Transient and period of powers of A / lambda(A)")\
        .add_argument("matrix", help="Matrix file")
    command("csr", "CSR decomposition of an irreducible matrix")\
        .add_argument("matrix", help="Matrix file")
    command("nachtigall", "Nachtigall expansion of matrix powers")\
        .add_argument("matrix", help="Matrix file")
    command("bound", "Transient bound from the Nachtigall expansion")\
        .add_argument("matrix", help="Matrix file")
    commute = command(
        "commute", "Commutation, common eigenvector, saturation cycles"
    )
    commute.add_argument("first", help="Matrix file of A")
    commute.add_argument("second", help="Matrix file of B")
    threshold = command("threshold", "Threshold digraphs and their components")
    threshold.add_argument("matrix", help="Matrix file")
    threshold.add_argument(
        "--theta",
        type=str,
        help="Only this threshold: report its edges"
    )
    return parser


def _mode(args):
    if args.mode == "exact":
        return EXACT
    if args.mode == "float":
        return float_mode(args.tol)
    return None


def _read(args, report, path):
    text = read_text(path)
    report.add_input(path, text)
    parsed = parse_matrix_file(text, mode=_mode(args), base=args.base)
    if not parsed.mode.exact:
        report.warn(
            "Float mode: equalities decided with tolerance {0}".format(args.tol)
        )
    return parsed


def _mean_denominator(matrix):
    mean = max_cycle_gmean(matrix)
    if mean.is_zero:
        return 1
    return fractions.Fraction(mean.exponent(matrix.base)).denominator


def _load_all(args, report, paths, denominator=1):
    """Matrices to analyse, in the max-times domain.

    Max-plus input is lifted to a power common to all files (and to
    ``denominator``) that also makes each maximum cycle mean rational in
    exact mode. The report then writes its values as exponents.
    """
    parsed = [_read(args, report, path) for path in paths]
    if len(set(item.domain for item in parsed)) > 1:
        raise PreconditionError("Cannot mix max-times and max-plus input")
    if parsed[0].domain == MAX_PLUS:
        if len(set(item.base for item in parsed)) > 1:
            raise PreconditionError("Max-plus files use different bases")
        root = denominator if parsed[0].mode.exact else 1
        for item in parsed:
            root = lcm(root, item.matrix.root)
            if item.mode.exact:
                root = lcm(root, _mean_denominator(item.matrix))
        matrices = [item.matrix.lift(root) for item in parsed]
        logger.debug("Max-plus input lifted by {0}".format(root))
    else:
        root = 1
        matrices = [item.matrix for item in parsed]
    matrices = [
        matrix if matrix.mode.exact else matrix.to_mode(float_mode(args.tol))
        for matrix in matrices
    ]
    if parsed[0].domain == MAX_PLUS:
        report.use_exponents(
            Exponents(matrices[0].mode, parsed[0].base, root)
        )
    return matrices


def _load(args, report, path, denominator=1):
    return _load_all(args, report, [path], denominator)[0]


def _components(decomposition):
    return [
        {"nodes": one_based(sorted(c.nodes)), "trivial": c.trivial}
        for c in decomposition
    ]


def _critical(graph):
    return {
        "nodes": one_based(graph.nodes),
        "edges": one_based_edges(graph.edges),
        "components": _components(graph.components),
        "cyclicity": graph.cyclicity,
    }


def run_info(args, report):
    matrix = _load(args, report, args.matrix)
    results = report.results
    results["n"] = matrix.n
    results["mode"] = matrix.mode.name
    results["edges"] = len(matrix.positive_entries())
    results["irreducible"] = is_irreducible(matrix)
    results["components"] = _components(scc(digraph_of(matrix)))
    results["lambda"] = max_cycle_gmean(matrix)


def run_star(args, report):
    report.results["star"] = kleene_star(_load(args, report, args.matrix))


def run_eigen(args, report):
    matrix = _load(args, report, args.matrix)
    mean = max_cycle_gmean(matrix)
    report.results["lambda"] = mean
    report.results["critical_cycle"] = mean.witness
    if mean.is_zero:
        report.warn("Matrix is acyclic; no eigenvector for lambda = 0")
        return
    report.results["critical_graph"] = _critical(critical_graph(matrix, mean))
    report.results["eigenvector"] = principal_eigenvector(matrix)
    report.results["basis"] = eigenspace_basis(matrix)


def run_scale(args, report):
    matrix = _load(args, report, args.matrix)
    results = report.results
    results["kind"] = args.kind
    if args.kind == "fp":
        scaling = fp_scaling(matrix)
    elif args.kind == "strong":
        scaling = strong_fp_scaling(matrix)
    elif args.kind == "eig":
        scaling, mean = eigenvector_scaling(matrix)
        results["lambda"] = mean
    elif args.kind == "rowcol":
        family = row_col_maxima_scalings(matrix)
        _family(args, report, family)
        scaling = family.sample()
    else:
        certificate = max_balance(matrix)
        scaling = certificate.scaling
        results["checked"] = certificate.checked
        results["levels"] = certificate.levels
        for message in certificate.warnings:
            report.warn(message)
    results["scaling"] = scaling
    results["scaled"] = apply_scaling(matrix.to_mode(scaling.mode), scaling)


def _family(args, report, family):
    results = report.results
    exponents = report.exponents
    results["rule"] = family.rule
    results["q"] = family.q
    results["q_star"] = family.q_star
    rng = random.Random(args.seed)
    if exponents is None:
        results["random_sample"] = family.random_sample(rng)
    else:
        results["random_sample"] = family.sample([
            exponents.lift(rng.randint(-8, 8)) for _ in range(family.q.n)
        ])


def run_sandwich(args, report):
    if len(args.matrices) % 3:
        raise PreconditionError(
            "Sandwich needs matrix files in groups of three, got {0}"
            .format(len(args.matrices))
        )
    matrices = _load_all(args, report, args.matrices)
    triples = [tuple(matrices[k:k + 3]) for k in range(0, len(matrices), 3)]
    family = sandwich_scalings(triples)
    _family(args, report, family)
    report.results["scaling"] = family.sample()


def run_hadamard(args, report):
    text = read_text(args.matrix)
    report.add_input(args.matrix, text)
    rows, mode = parse_real_matrix(text, mode=_mode(args))
    try:
        scaling = hadamard_scaling_test(rows, mode)
    except HadamardFailure as error:
        report.results["diagonal_product"] = error.diagonal_product
        raise
    d = scaling.entries
    report.results["scaling"] = scaling
    report.results["scaled"] = [
        [value * d[j] / d[i] for j, value in enumerate(row)]
        for i, row in enumerate(rows)
    ]


def run_powers(args, report):
    unit, mean = normalize_to_unit(_load(args, report, args.matrix))
    profile = transient_and_period(unit, budget=args.budget)
    report.results["lambda"] = mean
    report.results["transient"] = profile.transient
    report.results["period"] = profile.period
    report.results["predicted_period"] = profile.predicted_period
    if profile.period != profile.predicted_period:
        report.warn("Measured period differs from the critical cyclicity")


def run_csr(args, report):
    triple = csr_decompose(
        _load(args, report, args.matrix), budget=args.budget
    )
    results = report.results
    results["lambda"] = triple.mean
    results["scaling"] = triple.scaling
    results["cyclicity"] = triple.cyclicity
    results["critical_nodes"] = one_based(triple.critical_nodes)
    results["c"] = triple.c
    results["s"] = triple.s
    results["r"] = triple.r
    results["transient"] = triple.transient
    results["periodicity_transient"] = triple.periodicity_transient


def run_nachtigall(args, report):
    expansion = nachtigall_expansion(
        _load(args, report, args.matrix), budget=args.budget
    )
    report.results["terms"] = [
        {
            "lambda": term.mean,
            "support": one_based(term.support),
            "cyclicity": term.cyclicity,
        }
        for term in expansion.terms
    ]
    report.results["validity_start"] = expansion.validity_start
    report.results["within_quadratic"] = expansion.within_quadratic
    if expansion.validity_start is None:
        report.warn("Expansion not valid within the iteration budget")


def run_bound(args, report):
    matrix = _load(args, report, args.matrix)
    bound = transient_bound(matrix)
    report.results["bound"] = bound
    measured = None
    if is_irreducible(matrix):
        try:
            unit, _ = normalize_to_unit(matrix)
        except ExactnessUnavailable:
            report.warn("lambda(A) is irrational; transient not measured")
        else:
            profile = transient_and_period(unit, budget=args.budget)
            measured = profile.transient
    report.results["measured_transient"] = measured


def run_commute(args, report):
    first, second = _load_all(args, report, [args.first, args.second])
    report.results["commutes"] = commutes(first, second)
    if not report.results["commutes"]:
        raise NotCommuting("Matrices do not commute")
    common = common_eigenvector(first, second)
    report.results["eigenvector"] = common.vector
    report.results["lambda_a"] = common.mean_a
    report.results["lambda_b"] = common.mean_b
    pair = boolean_saturation_pair(first, second, common.vector)
    report.results["saturation_a"] = one_based_edges(pair.first.edge_set)
    report.results["saturation_b"] = one_based_edges(pair.second.edge_set)
    report.results["boolean_commuting"] = pair.commuting
    if pair.commuting:
        cycle_a, cycle_b = commuting_cycle_witness(pair)
        report.results["cycle_a"] = cycle_a
        report.results["cycle_b"] = cycle_b


def run_threshold(args, report):
    denominator = 1
    if args.theta is not None:
        try:
            theta = fractions.Fraction(args.theta.strip())
        except (ValueError, ZeroDivisionError):
            raise PreconditionError("Invalid threshold {0}".format(args.theta))
        denominator = theta.denominator
    matrix = _load(args, report, args.matrix, denominator)
    exponents = report.exponents
    if args.theta is not None:
        theta = args.theta if exponents is None else exponents.lift(theta)
        graph = threshold_digraph(matrix, theta)
        report.results["threshold"] = matrix.mode.coerce(args.theta)
        report.results["edges"] = one_based_edges(graph.edge_set)
        report.results["components"] = _components(scc(graph))
        return
    report.results["levels"] = [
        {"threshold": level.threshold if exponents is None
         else exponents.scalar(level.threshold),
         "components": _components(level.components)}
        for level in threshold_spectrum(matrix)
    ]


HANDLERS = {
    "info": run_info,
    "star": run_star,
    "eigen": run_eigen,
    "scale": run_scale,
    "sandwich": run_sandwich,
    "hadamard": run_hadamard,
    "powers": run_powers,
    "csr": run_csr,
    "nachtigall": run_nachtigall,
    "bound": run_bound,
    "commute": run_commute,
    "threshold": run_threshold,
}


def execute(args, argv):
    """Run a parsed command and collect its report.

    Library errors become exit codes: 1 for negative answers, 2 for usage
    and input errors, 3 for exactness and certification failures.

    :rtype: :class:`maxscale.report.AnalysisReport`
    """
    report = AnalysisReport(args.command, argv)
    try:
        args.handler(args, report)
    except MaxScaleError as error:
        report.exit_code = error.exit_code
        failure = {"type": type(error).__name__, "message": str(error)}
        cycle = getattr(error, "cycle", None)
        if cycle is not None:
            failure["cycle"] = cycle
        report.results["error"] = failure
        if error.exit_code == 1:
            logger.info(str(error))
        else:
            logger.error(str(error))
    report.results = jsonable(report.results, report.exponents)
    return report


def run_command(argv):
    """Parse ``argv``, run the command and return the report and exit code.

    :param argv: Command-line arguments without the program name
    :type argv: list of str
    :rtype: tuple
    """
    args = build_argument_parser().parse_args(argv)
    report = execute(args, argv)
    return report, report.exit_code


def main(argv=None):
    """Execute the program"""
    argv = sys.argv[1:] if argv is None else argv
    parser = build_argument_parser()
    args = parser.parse_args(argv)

    log(args.verbosity, args.log_file)
    logger.debug("Arguments are {0}".format(vars(args)))

    report = execute(args, argv)
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text())
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
