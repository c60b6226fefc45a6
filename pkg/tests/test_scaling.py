"""Unit Tests for diagonal scalings"""
import random
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis.strategies import integers

from maxscale.errors import (
    HadamardFailure, NegativeEntry, NoScaling, NotAnFpScaling,
    PatternViolation, ZeroDiagonal
)
from maxscale.scaling import (
    DiagonalScaling, apply_scaling, eigenvector_scaling, fp_scaling,
    has_dominant_diagonal, hadamard_scaling_test, is_fp_scaling,
    row_col_maxima_scalings, sandwich_scalings, satisfies_condition_two,
    saturation_graph, strong_fp_scaling
)
from maxscale.semiring import EXACT, FLOAT, MaxMatrix, MaxVector
from maxscale.spectral import critical_graph, max_cycle_gmean
from tests.strategies import (
    FACTORS, grid_scalings, matrices, oracle_dominance,
    oracle_heaviest_cycle_weight, oracle_mean, positive_vectors,
    sandwich_triples, scaled_unit_matrices, signed_matrices
)


class TestApplyScaling(unittest.TestCase):
    """Scaled matrices"""

    def test_ones(self):
        """Scaling by ones changes nothing"""
        matrix = MaxMatrix([[0, 4], [1, 0]])
        self.assertEqual(apply_scaling(matrix, DiagonalScaling([1, 1])),
                         matrix)

    def test_quotients(self):
        """b_ij = a_ij x_j / x_i"""
        matrix = MaxMatrix([[0, 4], [1, 0]])
        self.assertEqual(apply_scaling(matrix, DiagonalScaling([2, 1])),
                         MaxMatrix([[0, 2], [2, 0]]))

    def test_positive(self):
        """Scalings must be positive"""
        with self.assertRaises(NegativeEntry):
            DiagonalScaling([1, 0])

    @settings(max_examples=200, deadline=None)
    @given(matrices(max_n=6), positive_vectors(6))
    def test_inverse(self, matrix, values):
        """Scaling by x then by x^-1 restores A"""
        scaling = DiagonalScaling(values[:matrix.n])
        scaled = apply_scaling(matrix, scaling)
        self.assertEqual(apply_scaling(scaled, scaling.inverse()), matrix)


class TestFpScaling(unittest.TestCase):
    """FP and strong FP scalings"""

    def test_zero_matrix(self):
        """Ones for the zero matrix"""
        self.assertEqual(fp_scaling(MaxMatrix.zeros(3)).tolist(), [1, 1, 1])
        self.assertEqual(strong_fp_scaling(MaxMatrix.zeros(3)).tolist(),
                         [1, 1, 1])

    def test_worked(self):
        """Row maxima of the star"""
        matrix = MaxMatrix([[0, 2], ["1/4", 0]])
        scaling = fp_scaling(matrix)
        self.assertEqual(scaling.tolist(), [2, 1])
        self.assertEqual(apply_scaling(matrix, scaling),
                         MaxMatrix([[0, 1], ["1/2", 0]]))

    def test_heavy_cycle(self):
        """A cycle of weight 4 blocks every FP scaling"""
        with self.assertRaises(NoScaling) as context:
            fp_scaling(MaxMatrix([[0, 4], [1, 0]]))
        self.assertEqual(context.exception.weight, 4)
        self.assertEqual(context.exception.cycle.nodes, (0, 1, 0))

    def test_strong(self):
        """Row sums of the star"""
        scaling = strong_fp_scaling(MaxMatrix([[0, "1/2"], ["1/2", 0]]))
        self.assertEqual(scaling.tolist(), [Fraction(3, 2), Fraction(3, 2)])

    def test_strong_unit_cycle(self):
        """A cycle of weight exactly 1 blocks strong scalings"""
        with self.assertRaises(NoScaling) as context:
            strong_fp_scaling(MaxMatrix([[0, 2], ["1/2", 0]]))
        self.assertEqual(context.exception.weight, 1)

    def test_is_fp_scaling(self):
        """Entries above 1 fail, strictness is optional"""
        self.assertFalse(is_fp_scaling(MaxMatrix([[0, 2], ["1/4", 0]]),
                                       DiagonalScaling([1, 1])))
        self.assertTrue(is_fp_scaling(MaxMatrix([[0, "1/2"], ["1/2", 0]]),
                                      DiagonalScaling([1, 1]), strict=True))
        self.assertFalse(is_fp_scaling(MaxMatrix([[0, 1], [1, 0]]),
                                       DiagonalScaling([1, 1]), strict=True))

    def test_float_scaling(self):
        """Float mode accepts unit cycles up to tolerance"""
        matrix = MaxMatrix([[0, 3.0], [1 / 3.0, 0]], FLOAT)
        scaling = fp_scaling(matrix)
        self.assertTrue(is_fp_scaling(matrix, scaling))

    @settings(max_examples=1000, deadline=None)
    @given(matrices(max_n=7))
    def test_matches_oracle(self, matrix):
        """FP scalings exist iff no cycle is heavier than 1"""
        heavy = oracle_heaviest_cycle_weight(matrix) > 1
        try:
            scaling = fp_scaling(matrix)
        except NoScaling as error:
            self.assertTrue(heavy)
            self.assertGreater(error.weight, 1)
            return
        self.assertFalse(heavy)
        self.assertTrue(is_fp_scaling(matrix, scaling))

    @settings(max_examples=500, deadline=None)
    @given(matrices(max_n=7))
    def test_strong_matches_oracle(self, matrix):
        """Strong FP scalings exist iff every cycle mean is below 1"""
        light = oracle_mean(matrix) < 1
        try:
            scaling = strong_fp_scaling(matrix)
        except NoScaling as error:
            self.assertFalse(light)
            self.assertGreaterEqual(error.weight, 1)
            return
        self.assertTrue(light)
        self.assertTrue(is_fp_scaling(matrix, scaling, strict=True))

    @settings(max_examples=200, deadline=None)
    @given(matrices(max_n=3))
    def test_no_scaling_on_grid(self, matrix):
        """Refused matrices have no FP scaling on a log grid"""
        try:
            fp_scaling(matrix)
        except NoScaling:
            for scaling in grid_scalings(matrix.n):
                self.assertFalse(is_fp_scaling(matrix, scaling))


class TestSaturation(unittest.TestCase):
    """Saturation graphs"""

    def test_two_cycle(self):
        """Both edges saturated"""
        graph = saturation_graph(MaxMatrix([[0, 1], [1, 0]]), [1, 1])
        self.assertEqual(graph.edges, frozenset([(0, 1), (1, 0)]))

    def test_partial(self):
        """Only the edge pushed exactly to 1"""
        graph = saturation_graph(MaxMatrix([[0, 2], ["1/4", 0]]), [2, 1])
        self.assertEqual(graph.edges, frozenset([(0, 1)]))

    def test_identity(self):
        """All loops"""
        graph = saturation_graph(MaxMatrix.identity(2), [1, 1])
        self.assertEqual(graph.edges, frozenset([(0, 0), (1, 1)]))

    def test_not_fp(self):
        """Refuses vectors that leave an entry above 1"""
        with self.assertRaises(NotAnFpScaling):
            saturation_graph(MaxMatrix([[0, 2], ["1/4", 0]]), [1, 1])

    @settings(max_examples=200, deadline=None)
    @given(scaled_unit_matrices(max_n=6))
    def test_eigenvector_scaling(self, matrix):
        """Scaled entries stay below lambda, critical ones reach it"""
        scaling, mean = eigenvector_scaling(matrix)
        scaled = apply_scaling(matrix, scaling)
        for value in scaled.entries.ravel():
            self.assertLessEqual(value, mean.value)
        for i, j in critical_graph(matrix, mean).edges:
            self.assertEqual(scaled[i, j], mean.value)


class TestRowColumnMaxima(unittest.TestCase):
    """Row and column maxima on the diagonal"""

    def test_worked(self):
        """Sample (1, 2) equalizes everything"""
        family = row_col_maxima_scalings(MaxMatrix([[2, 1], [4, 2]]))
        self.assertEqual(family.q, MaxMatrix([[1, "1/2"], [2, 1]]))
        sample = family.sample()
        self.assertEqual(sample.tolist(), [1, 2])
        self.assertEqual(
            apply_scaling(MaxMatrix([[2, 1], [4, 2]]), sample),
            MaxMatrix([[2, 2], [2, 2]])
        )

    def test_impossible(self):
        """Q has a cycle of weight 4"""
        with self.assertRaises(NoScaling) as context:
            row_col_maxima_scalings(MaxMatrix([[1, 4], [1, 1]]))
        self.assertEqual(context.exception.weight, 4)

    def test_diagonal(self):
        """Diagonal matrices need no scaling"""
        family = row_col_maxima_scalings(MaxMatrix([[3, 0], [0, "1/2"]]))
        self.assertEqual(family.sample().tolist(), [1, 1])

    def test_zero_diagonal(self):
        """Diagonal entries must be positive"""
        with self.assertRaises(ZeroDiagonal) as context:
            row_col_maxima_scalings(MaxMatrix([[1, 1], [1, 0]]))
        self.assertEqual(context.exception.index, 1)

    @settings(max_examples=200, deadline=None)
    @given(matrices(max_n=6, values=FACTORS), integers(0, 1000))
    def test_family_members(self, matrix, seed):
        """Every sampled member solves the problem"""
        try:
            family = row_col_maxima_scalings(matrix)
        except NoScaling:
            return
        sample = family.random_sample(random.Random(seed))
        self.assertTrue(family.contains(sample))
        self.assertTrue(has_dominant_diagonal(apply_scaling(matrix, sample)))

    @settings(max_examples=200, deadline=None)
    @given(matrices(max_n=3, values=FACTORS))
    def test_no_scaling_on_grid(self, matrix):
        """Refused matrices have no equalizing scaling on a log grid"""
        try:
            row_col_maxima_scalings(matrix)
        except NoScaling:
            for scaling in grid_scalings(matrix.n):
                scaled = apply_scaling(matrix, scaling)
                self.assertFalse(has_dominant_diagonal(scaled))


class TestSandwich(unittest.TestCase):
    """Sandwich scalings"""

    def test_worked(self):
        """Identity scaling already fits"""
        family = sandwich_scalings([(
            MaxMatrix([[0, 1], [1, 0]]),
            MaxMatrix([[0, 2], [2, 0]]),
            MaxMatrix([[0, 4], [4, 0]])
        )])
        self.assertEqual(family.q, MaxMatrix([[0, "1/2"], ["1/2", 0]]))
        self.assertEqual(family.sample().tolist(), [1, 1])

    def test_equal_bounds(self):
        """A = B = C is solved by ones"""
        matrix = MaxMatrix([[1, 2], [3, 0]])
        family = sandwich_scalings([(matrix, matrix, matrix)] * 2)
        self.assertEqual(family.sample().tolist(), [1, 1])

    def test_pattern(self):
        """B may not leave the digraph of C"""
        with self.assertRaises(PatternViolation) as context:
            sandwich_scalings([(
                MaxMatrix([[0, 1], [0, 0]]),
                MaxMatrix([[0, 1], [1, 0]]),
                MaxMatrix([[0, 1], [0, 0]])
            )])
        self.assertEqual(context.exception.position, (1, 0))

    def test_infeasible(self):
        """Lower bound above the upper one after any scaling"""
        with self.assertRaises(NoScaling):
            sandwich_scalings([(
                MaxMatrix([[0, 2], [2, 0]]),
                MaxMatrix([[0, 2], [2, 0]]),
                MaxMatrix([[0, 2], [1, 0]])
            )])

    @settings(max_examples=200, deadline=None)
    @given(scaled_unit_matrices(max_n=5), integers(0, 1000))
    def test_random_members(self, matrix, seed):
        """Sampled members respect both bounds"""
        lower = matrix.scaled("1/2")
        upper = matrix.scaled(2)
        family = sandwich_scalings([(lower, matrix, upper)])
        sample = family.random_sample(random.Random(seed))
        scaled = apply_scaling(matrix, sample)
        self.assertTrue(lower <= scaled)
        self.assertTrue(scaled <= upper)

    @settings(max_examples=200, deadline=None)
    @given(sandwich_triples())
    def test_no_scaling_on_grid(self, triple):
        """Refused triples have no fitting scaling on a log grid"""
        lower, middle, upper = triple
        try:
            sandwich_scalings([triple])
        except NoScaling:
            for scaling in grid_scalings(middle.n):
                scaled = apply_scaling(middle, scaling)
                self.assertFalse(lower <= scaled and scaled <= upper)


class TestHadamard(unittest.TestCase):
    """Dominant diagonals of real matrices"""

    def test_already_dominant(self):
        """No scaling needed"""
        scaling = hadamard_scaling_test([[2, 1], [1, 2]])
        self.assertEqual(scaling.tolist(), [1, 1])

    def test_signed_entries(self):
        """Only moduli matter"""
        rows = [[-2, 4, 0], [0, 3, -1], ["1/2", 0, -1]]
        scaling = hadamard_scaling_test(rows)
        self.assertTrue(satisfies_condition_two(rows, scaling))

    def test_failure(self):
        """Cyclic product 9 exceeds diagonal product 1"""
        with self.assertRaises(HadamardFailure) as context:
            hadamard_scaling_test([[1, 3], [3, 1]])
        self.assertEqual(context.exception.cycle.nodes, (0, 1, 0))
        self.assertEqual(context.exception.weight, 9)
        self.assertEqual(context.exception.diagonal_product, 1)

    def test_zero_diagonal(self):
        """Zero diagonal entries are refused"""
        with self.assertRaises(ZeroDiagonal):
            hadamard_scaling_test([[0, 1], [1, 1]])

    def test_float_mode(self):
        """Float matrices use the float mode"""
        scaling = hadamard_scaling_test([[2.0, -1.0], [4.0, 2.0]], FLOAT)
        self.assertTrue(
            satisfies_condition_two([[2.0, -1.0], [4.0, 2.0]], scaling, FLOAT)
        )

    @settings(max_examples=300, deadline=None)
    @given(signed_matrices())
    def test_matches_cycle_oracle(self, rows):
        """A scaling exists iff no cyclic product beats the diagonal"""
        possible = oracle_dominance(rows)
        try:
            scaling = hadamard_scaling_test(rows)
        except HadamardFailure as error:
            self.assertFalse(possible)
            self.assertGreater(error.weight, error.diagonal_product)
            return
        self.assertTrue(possible)
        self.assertTrue(satisfies_condition_two(rows, scaling))


class TestScalingFamily(unittest.TestCase):
    """Scaling families"""

    def test_contains(self):
        """Members satisfy Q* x = x"""
        family = row_col_maxima_scalings(MaxMatrix([[2, 1], [4, 2]]))
        self.assertTrue(family.contains([1, 2]))
        self.assertTrue(family.contains([2, 4]))
        self.assertFalse(family.contains([1, 1]))

    def test_generator(self):
        """Explicit generators"""
        family = row_col_maxima_scalings(MaxMatrix([[2, 1], [4, 2]]))
        self.assertEqual(family.sample(MaxVector([3, 1], EXACT)).tolist(),
                         [3, 6])

    def test_seeded(self):
        """Equal seeds give equal samples"""
        family = row_col_maxima_scalings(MaxMatrix([[2, 1], [4, 2]]))
        self.assertEqual(family.random_sample(random.Random(7)),
                         family.random_sample(random.Random(7)))


if __name__ == "__main__":
    unittest.main()
