"""Unit Tests for max-balancing"""
import unittest

from hypothesis import given, settings

from maxscale.balancing import (
    CUT, CYCLE_COVER, is_max_balanced_cut, is_max_balanced_cyclecover,
    max_balance
)
from maxscale.digraph import digraph_of, enumerate_cycles
from maxscale.errors import ExactnessUnavailable, NotIrreducible, SizeLimit
from maxscale.scaling import DiagonalScaling, apply_scaling
from maxscale.semiring import FLOAT, MaxMatrix, Path
from tests.strategies import float_matrices, positive_vectors, unit_matrices


class TestMaxBalance(unittest.TestCase):
    """Balancing scalings"""

    def test_symmetric(self):
        """Already balanced"""
        certificate = max_balance(MaxMatrix([[0, 2], [2, 0]]))
        self.assertEqual(certificate.scaling.tolist(), [1, 1])
        self.assertEqual(certificate.checked, [CYCLE_COVER, CUT])
        self.assertEqual(certificate.warnings, [])

    def test_two_cycle(self):
        """Both directions meet at the cycle mean"""
        certificate = max_balance(MaxMatrix([[0, 4], [1, 0]]))
        self.assertEqual(certificate.scaling.tolist(), [2, 1])
        self.assertEqual(certificate.balanced, MaxMatrix([[0, 2], [2, 0]]))
        self.assertEqual([str(level) for level in certificate.levels],
                         ["(4)^(1/2)"])

    def test_identity(self):
        """Loops need nothing"""
        certificate = max_balance(MaxMatrix.identity(3))
        self.assertEqual(certificate.scaling.tolist(), [1, 1, 1])
        self.assertEqual(certificate.levels, [])

    def test_completely_reducible(self):
        """Blocks balance independently"""
        matrix = MaxMatrix([
            [0, 2, 0, 0],
            [2, 0, 0, 0],
            [0, 0, 0, 4],
            [0, 0, 1, 0],
        ])
        certificate = max_balance(matrix)
        self.assertEqual(certificate.scaling.tolist(), [1, 1, 2, 1])
        self.assertTrue(is_max_balanced_cut(certificate.balanced))

    def test_reducible(self):
        """Edges between components cannot be balanced"""
        with self.assertRaises(NotIrreducible):
            max_balance(MaxMatrix([[1, 1], [0, 1]]))

    def test_irrational_level(self):
        """Irrational levels fall back to float mode with a warning"""
        certificate = max_balance(MaxMatrix([[0, 2], [1, 0]]))
        self.assertEqual(certificate.mode, FLOAT)
        self.assertEqual(len(certificate.warnings), 1)
        self.assertAlmostEqual(certificate.balanced[0, 1], 2 ** 0.5)
        self.assertAlmostEqual(certificate.balanced[1, 0], 2 ** 0.5)

    def test_irrational_level_strict(self):
        """The fallback can be refused"""
        with self.assertRaises(ExactnessUnavailable):
            max_balance(MaxMatrix([[0, 2], [1, 0]]), allow_float=False)

    @settings(max_examples=500, deadline=None)
    @given(unit_matrices(max_n=8))
    def test_exact_certificate(self, matrix):
        """Balanced output passes the cycle-cover check"""
        certificate = max_balance(matrix)
        self.assertIn(CYCLE_COVER, certificate.checked)
        self.assertTrue(is_max_balanced_cyclecover(certificate.balanced))

    @settings(max_examples=200, deadline=None)
    @given(float_matrices(max_n=6))
    def test_cycle_weights(self, matrix):
        """Balancing is a similarity: cycle weights are unchanged"""
        balanced = max_balance(matrix).balanced
        for cycle in enumerate_cycles(digraph_of(matrix)):
            self.assertTrue(FLOAT.eq(
                Path.of(balanced, cycle.nodes).weight, cycle.weight
            ))

    @settings(max_examples=500, deadline=None)
    @given(float_matrices(max_n=8), positive_vectors(8, FLOAT))
    def test_similarity_invariance(self, matrix, values):
        """Similar matrices balance to the same matrix"""
        similar = apply_scaling(
            matrix, DiagonalScaling(values[:matrix.n], FLOAT)
        )
        self.assertEqual(max_balance(similar).balanced,
                         max_balance(matrix).balanced)


class TestBalanceChecks(unittest.TestCase):
    """Cycle-cover and cut characterisations"""

    def test_cycle_cover(self):
        """Each edge is lightest on some cycle"""
        self.assertTrue(is_max_balanced_cyclecover(MaxMatrix([[0, 2], [2, 0]])))
        self.assertFalse(is_max_balanced_cyclecover(MaxMatrix([[0, 4], [1, 0]])))
        self.assertTrue(is_max_balanced_cyclecover(MaxMatrix.identity(3)))

    def test_cut(self):
        """Every cut is crossed equally both ways"""
        self.assertTrue(is_max_balanced_cut(MaxMatrix([[0, 2], [2, 0]])))
        self.assertFalse(is_max_balanced_cut(MaxMatrix([[0, 4], [1, 0]])))
        self.assertTrue(is_max_balanced_cut(MaxMatrix([[5]])))

    def test_cut_size_limit(self):
        """Exhaustive checks stop at the size limit"""
        with self.assertRaises(SizeLimit):
            is_max_balanced_cut(MaxMatrix.identity(15))
        self.assertTrue(is_max_balanced_cut(MaxMatrix.identity(3), 3))

    @settings(max_examples=200, deadline=None)
    @given(float_matrices(max_n=6))
    def test_characterisations_agree(self, matrix):
        """Both checks agree on balanced and on unbalanced matrices"""
        balanced = max_balance(matrix).balanced
        self.assertTrue(is_max_balanced_cyclecover(balanced))
        self.assertTrue(is_max_balanced_cut(balanced))
        self.assertEqual(is_max_balanced_cyclecover(matrix),
                         is_max_balanced_cut(matrix))


if __name__ == "__main__":
    unittest.main()
