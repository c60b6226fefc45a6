"""Unit Tests for cycle means and eigenvectors"""
import math
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis.strategies import lists

from maxscale.errors import (
    AcyclicMatrix, ExactnessError, ExactnessUnavailable, NotIrreducible
)
from maxscale.digraph import enumerate_cycles, scc
from maxscale.matrixfile import parse_matrix
from maxscale.scaling import apply_scaling, saturation_graph
from maxscale.semiring import (
    EXACT, FLOAT, MaxMatrix, MaxPlusMatrix, MaxVector, Path, kleene_star,
    otimes
)
from maxscale.spectral import (
    CycleMean, critical_eigenvector, critical_graph, eigenspace_basis,
    is_eigenvector, is_irreducible, max_cycle_gmean, normalized_star,
    principal_eigenvector
)
from tests.strategies import (
    matrices, oracle_mean, positive_vectors, scaled_unit_matrices,
    unit_matrices
)


def _cycle_nodes(graph):
    return set(cycle.canonical().nodes for cycle in enumerate_cycles(graph))


class TestCycleMean(unittest.TestCase):
    """Exact comparison of geometric means"""

    def test_cross_powers(self):
        """Means compare without taking roots"""
        self.assertLess(CycleMean(2, 2, EXACT), CycleMean(3, 2, EXACT))
        self.assertEqual(CycleMean(2, 2, EXACT), CycleMean(4, 4, EXACT))
        self.assertEqual(CycleMean(4, 2, EXACT), 2)
        self.assertGreater(CycleMean(2, 2, EXACT), 1)

    def test_irrational(self):
        """Irrational means have no exact value"""
        mean = CycleMean(2, 2, EXACT)
        self.assertFalse(mean.is_rational)
        with self.assertRaises(ExactnessUnavailable):
            mean.value
        self.assertAlmostEqual(mean.approx, math.sqrt(2))

    def test_rational_root(self):
        """Perfect powers keep an exact value"""
        self.assertEqual(CycleMean(Fraction(8, 27), 3, EXACT).value,
                         Fraction(2, 3))

    def test_zero(self):
        """Acyclic means are zero"""
        mean = CycleMean.zero(EXACT)
        self.assertTrue(mean.is_zero)
        self.assertEqual(mean.log(), float("-inf"))
        self.assertLess(mean, CycleMean(Fraction(1, 100), 5, EXACT))


class TestMaxCycleMean(unittest.TestCase):
    """Maximum cycle geometric mean"""

    def test_single_loop(self):
        """A loop is its own mean"""
        mean = max_cycle_gmean(MaxMatrix([[3]]))
        self.assertEqual(mean, 3)
        self.assertEqual(mean.witness.nodes, (0, 0))

    def test_two_cycle(self):
        """The 2-cycle has mean 1"""
        mean = max_cycle_gmean(MaxMatrix([[0, 2], ["1/2", 0]]))
        self.assertEqual(mean.value, 1)
        self.assertEqual(mean.witness, Path((0, 1, 0), Fraction(1)))

    def test_acyclic(self):
        """Strictly upper triangular matrices have mean zero"""
        mean = max_cycle_gmean(MaxMatrix([[0, 2, 1], [0, 0, 3], [0, 0, 0]]))
        self.assertTrue(mean.is_zero)
        self.assertIsNone(mean.witness)

    def test_irrational_witness(self):
        """The witness is exact even when the mean is irrational"""
        mean = max_cycle_gmean(MaxMatrix([[0, 2], [1, 0]]))
        self.assertEqual((mean.weight, mean.length), (2, 2))

    def test_float_mode(self):
        """Float means approximate exact ones"""
        matrix = MaxMatrix([[0, 2, 0], [0, 0, 1], [3, 0, "1/2"]])
        exact = max_cycle_gmean(matrix)
        approx = max_cycle_gmean(matrix.to_mode(FLOAT))
        self.assertAlmostEqual(approx.approx, exact.approx)
        self.assertAlmostEqual(approx.value, 6 ** (1 / 3.0))

    @settings(max_examples=500, deadline=None)
    @given(matrices(max_n=6))
    def test_matches_oracle(self, matrix):
        """Karp's value equals the brute-force maximum"""
        mean = max_cycle_gmean(matrix)
        self.assertEqual(mean, oracle_mean(matrix))
        if not mean.is_zero:
            witness = mean.witness
            self.assertTrue(witness.is_cycle)
            self.assertEqual(witness, Path.of(matrix, witness.nodes))
            self.assertEqual(
                CycleMean(witness.weight, witness.length, EXACT), mean
            )


class TestCriticalGraph(unittest.TestCase):
    """Critical graph"""

    def test_loops_only(self):
        """Light 2-cycle is not critical"""
        graph = critical_graph(MaxMatrix([[1, "1/2"], ["1/2", 1]]))
        self.assertEqual(graph.nodes, (0, 1))
        self.assertEqual(graph.edges, frozenset([(0, 0), (1, 1)]))
        self.assertEqual(graph.cyclicity, 1)

    def test_two_cycle(self):
        """The only cycle is critical"""
        graph = critical_graph(MaxMatrix([[0, 1], [1, 0]]))
        self.assertEqual(graph.edges, frozenset([(0, 1), (1, 0)]))
        self.assertEqual(graph.cyclicity, 2)

    def test_identity(self):
        """All loops"""
        graph = critical_graph(MaxMatrix.identity(3))
        self.assertEqual(len(graph.components), 3)
        self.assertEqual(graph.cyclicity, 1)

    def test_acyclic(self):
        """No critical graph without cycles"""
        with self.assertRaises(AcyclicMatrix):
            critical_graph(MaxMatrix([[0, 1], [0, 0]]))

    @settings(max_examples=200, deadline=None)
    @given(unit_matrices(max_n=6), lists(positive_vectors(6), min_size=1,
                                         max_size=4))
    def test_critical_cycles_are_saturated(self, matrix, samples):
        """Saturation graphs of FP scalings share the critical cycles"""
        star = kleene_star(matrix)
        critical = critical_graph(matrix)
        critical_cycles = _cycle_nodes(critical.graph)
        for u in [[1] * matrix.n] + samples:
            x = otimes(star, MaxVector(u[:matrix.n]))
            saturated = saturation_graph(matrix, x).graph
            self.assertTrue(critical.graph.is_subgraph_of(saturated))
            self.assertEqual(_cycle_nodes(saturated), critical_cycles)
            self.assertEqual(
                [c.nodes for c in scc(saturated).nontrivial],
                [c.nodes for c in critical.components.nontrivial]
            )

    @settings(max_examples=200, deadline=None)
    @given(matrices(max_n=6), positive_vectors(6))
    def test_similarity_invariance(self, matrix, values):
        """X^-1 A X has the critical graph of A"""
        if max_cycle_gmean(matrix).is_zero:
            return
        scaled = apply_scaling(matrix, values[:matrix.n])
        self.assertEqual(critical_graph(scaled).edges,
                         critical_graph(matrix).edges)
        self.assertEqual(critical_graph(scaled).cyclicity,
                         critical_graph(matrix).cyclicity)


class TestEigenvectors(unittest.TestCase):
    """Eigenspace and principal eigenvector"""

    def test_identity_basis(self):
        """Columns of I"""
        basis = eigenspace_basis(MaxMatrix.identity(3))
        self.assertEqual(
            [vector.tolist() for vector in basis],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        )

    def test_proportional_columns(self):
        """One generator per critical component"""
        for matrix in (MaxMatrix([[0, 1], [1, 0]]),
                       MaxMatrix([[1, 1], [1, 1]])):
            basis = eigenspace_basis(matrix)
            self.assertEqual([vector.tolist() for vector in basis],
                             [[1, 1]])

    def test_principal(self):
        """Worked eigenvectors"""
        self.assertEqual(principal_eigenvector(MaxMatrix.identity(3)),
                         MaxVector.ones(3))
        self.assertEqual(
            principal_eigenvector(MaxMatrix([[0, 2], ["1/2", 0]])),
            MaxVector([2, 1])
        )
        self.assertEqual(
            principal_eigenvector(MaxMatrix([[1, 1], [1, 0]])),
            MaxVector([1, 1])
        )

    def test_no_positive_eigenvector(self):
        """A node without access to a critical cycle"""
        with self.assertRaises(NotIrreducible):
            principal_eigenvector(MaxMatrix([[1, 1], [0, 0]]))

    def test_critical_eigenvector(self):
        """Eigenvector with zero entries"""
        matrix = MaxMatrix([[1, 1], [0, 0]])
        vector = critical_eigenvector(matrix)
        self.assertEqual(vector, MaxVector([1, 0]))
        self.assertTrue(is_eigenvector(matrix, vector, 1))

    def test_is_eigenvector(self):
        """Both equalities are checked"""
        matrix = MaxMatrix([[0, 2], ["1/2", 0]])
        self.assertTrue(is_eigenvector(matrix, MaxVector([2, 1]), 1))
        self.assertFalse(is_eigenvector(matrix, MaxVector([1, 1]), 1))
        self.assertTrue(
            is_eigenvector(MaxMatrix.identity(2), MaxVector([3, 5]), 1)
        )

    def test_irrational_eigenvalue(self):
        """Eigenvalues compare through powers"""
        matrix = MaxMatrix([[0, 2], [1, 0]])
        mean = max_cycle_gmean(matrix)
        with self.assertRaises(ExactnessUnavailable):
            normalized_star(matrix, mean)
        vector = principal_eigenvector(matrix.to_mode(FLOAT))
        self.assertTrue(
            is_eigenvector(matrix.to_mode(FLOAT), vector, mean.approx)
        )

    @settings(max_examples=200, deadline=None)
    @given(scaled_unit_matrices(max_n=6))
    def test_principal_is_eigenvector(self, matrix):
        """A x = lambda x exactly, saturation has no dead ends"""
        mean = max_cycle_gmean(matrix)
        vector = principal_eigenvector(matrix)
        self.assertTrue(vector.positive)
        self.assertEqual(min(vector), 1)
        self.assertTrue(is_eigenvector(matrix, vector, mean))
        self.assertTrue(is_eigenvector(matrix, vector, mean.value))
        unit = matrix.scaled(1 / mean.value)
        graph = saturation_graph(unit, vector).graph
        for node in range(matrix.n):
            self.assertGreaterEqual(graph.out_degree(node), 1)

    @settings(max_examples=200, deadline=None)
    @given(scaled_unit_matrices(max_n=6), positive_vectors(6))
    def test_scaling_preserves_mean(self, matrix, values):
        """Diagonal similarity keeps lambda"""
        x = values[:matrix.n]
        scaled = MaxMatrix(
            [[matrix[i, j] * x[j] / x[i] for j in range(matrix.n)]
             for i in range(matrix.n)]
        )
        self.assertEqual(max_cycle_gmean(scaled), max_cycle_gmean(matrix))
        self.assertTrue(is_irreducible(scaled))


class TestMaxPlusMeans(unittest.TestCase):
    """Means of max-plus matrices with rational exponents"""

    def setUp(self):
        self.matrix = parse_matrix("maxplus 2 exact\n-inf 1/2\n1/3 -inf\n")

    def test_parsed_additively(self):
        """The file stays in the max-plus domain"""
        self.assertIsInstance(self.matrix, MaxPlusMatrix)
        with self.assertRaises(ExactnessError):
            self.matrix.to_max_times()

    def test_mean(self):
        """The mean of the two-cycle is the average exponent"""
        mean = max_cycle_gmean(self.matrix)
        self.assertEqual(mean, CycleMean(32, 12, EXACT))
        self.assertEqual(mean.exponent(), Fraction(5, 12))
        self.assertFalse(mean.is_rational)
        self.assertAlmostEqual(mean.log(), 5 * math.log(2) / 12)

    def test_zero_exponents(self):
        """A loop of exponent 0 gives mean 1"""
        matrix = parse_matrix("maxplus 2 exact\n0 1/2\n-inf 0\n")
        mean = max_cycle_gmean(matrix)
        self.assertEqual(mean, 1)
        self.assertEqual(mean.exponent(), 0)

    def test_critical_graph(self):
        """The lift keeps the critical cycle"""
        graph = critical_graph(self.matrix)
        self.assertEqual(graph.edges, frozenset([(0, 1), (1, 0)]))
        self.assertEqual(graph.cyclicity, 2)
        self.assertEqual(graph.mean.exponent(), Fraction(5, 12))
        self.assertTrue(is_irreducible(self.matrix))

    def test_agrees_with_float(self):
        """Exact exponents match a float analysis of the same data"""
        exact = max_cycle_gmean(self.matrix).exponent()
        floating = max_cycle_gmean(MaxPlusMatrix(
            [["-inf", 0.5], [1 / 3, "-inf"]], FLOAT, 2
        ))
        self.assertAlmostEqual(float(exact), floating.exponent(2))


if __name__ == "__main__":
    unittest.main()
