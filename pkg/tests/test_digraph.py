"""Unit Tests for weighted digraphs"""
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis.strategies import integers, permutations, sampled_from

from maxscale.digraph import (
    Digraph, digraph_of, enumerate_cycles, graph_cyclicity, scc,
    threshold_digraph, threshold_spectrum
)
from maxscale.errors import (
    EnumerationBudget, NotOnCycle, PreconditionError
)
from maxscale.semiring import MaxMatrix
from tests.strategies import ENTRIES, matrices


def _cycle(nodes):
    return dict(
        ((nodes[k], nodes[(k + 1) % len(nodes)]), Fraction(1))
        for k in range(len(nodes))
    )


class TestDigraph(unittest.TestCase):
    """Digraph of a matrix"""

    def test_zero_matrix(self):
        """No edges"""
        graph = digraph_of(MaxMatrix.zeros(3))
        self.assertEqual(graph.n, 3)
        self.assertEqual(graph.edges, [])

    def test_identity(self):
        """Loops of weight 1"""
        graph = digraph_of(MaxMatrix.identity(3))
        self.assertEqual(graph.edges, [(i, i, 1) for i in range(3)])

    def test_positive_entries(self):
        """One edge per positive entry"""
        graph = digraph_of(MaxMatrix([[0, 2], ["1/2", 0]]))
        self.assertEqual(graph.edges, [(0, 1, 2), (1, 0, Fraction(1, 2))])

    def test_foreign_edge(self):
        """Edges must stay inside the node set"""
        with self.assertRaises(PreconditionError):
            Digraph([0, 1], {(0, 2): 1})

    def test_reachable(self):
        """Reachability uses at least one edge"""
        graph = Digraph(range(3), {(0, 1): 1, (1, 2): 1})
        self.assertEqual(graph.reachable(0), {1, 2})
        self.assertEqual(graph.reachable(2), set())

    def test_to_matrix(self):
        """Boolean matrices keep the pattern only"""
        graph = digraph_of(MaxMatrix([[0, 2], ["1/2", 0]]))
        self.assertEqual(graph.to_matrix(boolean=True),
                         MaxMatrix([[0, 1], [1, 0]]))


class TestComponents(unittest.TestCase):
    """Strongly connected components"""

    def test_two_cycle(self):
        """One nontrivial component"""
        components = scc(Digraph(range(2), _cycle([0, 1])))
        self.assertEqual(len(components), 1)
        self.assertEqual(components.nontrivial[0].nodes, frozenset([0, 1]))

    def test_chain(self):
        """Acyclic chains split into trivial components"""
        components = scc(Digraph(range(3), {(0, 1): 1, (1, 2): 1}))
        self.assertEqual(len(components), 3)
        self.assertEqual(components.nontrivial, [])

    def test_loop(self):
        """A loop makes its node nontrivial"""
        components = scc(Digraph(range(2), {(0, 0): 1}))
        self.assertEqual(
            [(sorted(c.nodes), c.trivial) for c in components],
            [([0], False), ([1], True)]
        )

    @settings(max_examples=300, deadline=None)
    @given(matrices(max_n=8))
    def test_mutual_reachability(self, matrix):
        """Nodes share a component iff they reach each other"""
        graph = digraph_of(matrix)
        components = scc(graph)
        for i in range(matrix.n):
            for j in range(matrix.n):
                if i == j:
                    continue
                together = (
                    components.component_of(i) == components.component_of(j)
                )
                mutual = j in graph.reachable(i) and i in graph.reachable(j)
                self.assertEqual(together, mutual)


class TestCycles(unittest.TestCase):
    """Cycle enumeration and cyclicity"""

    def test_two_cycle(self):
        """One cycle of weight 1"""
        graph = digraph_of(MaxMatrix([[0, 2], ["1/2", 0]]))
        cycles = enumerate_cycles(graph)
        self.assertEqual(len(cycles), 1)
        self.assertEqual(cycles[0].nodes, (0, 1, 0))
        self.assertEqual(cycles[0].weight, 1)
        self.assertEqual(cycles[0].length, 2)

    def test_acyclic(self):
        """No cycles"""
        graph = digraph_of(MaxMatrix([[0, 1], [0, 0]]))
        self.assertEqual(enumerate_cycles(graph), [])

    def test_loops(self):
        """Identity gives one loop per node"""
        cycles = enumerate_cycles(digraph_of(MaxMatrix.identity(3)))
        self.assertEqual([c.nodes for c in cycles],
                         [(0, 0), (1, 1), (2, 2)])

    def test_length_bound(self):
        """Cycles longer than the bound are skipped"""
        graph = Digraph(range(3), _cycle([0, 1, 2]))
        self.assertEqual(enumerate_cycles(graph, max_len=2), [])
        self.assertEqual(len(enumerate_cycles(graph, max_len=3)), 1)

    def test_budget(self):
        """Large graphs are refused"""
        with self.assertRaises(EnumerationBudget):
            enumerate_cycles(digraph_of(MaxMatrix.identity(11)))

    def test_cyclicity(self):
        """gcd within components, lcm across them"""
        self.assertEqual(graph_cyclicity(Digraph(range(2), _cycle([0, 1]))),
                         2)
        edges = _cycle([0, 1])
        edges[(0, 0)] = 1
        self.assertEqual(graph_cyclicity(Digraph(range(2), edges)), 1)
        edges = _cycle([0, 1])
        edges.update(_cycle([2, 3, 4]))
        self.assertEqual(graph_cyclicity(Digraph(range(5), edges)), 6)

    @settings(max_examples=200, deadline=None)
    @given(integers(1, 8).flatmap(lambda n: permutations(range(n))))
    def test_hamiltonian_cycle(self, order):
        """A single cycle through all n nodes has cyclicity n"""
        order = list(order)
        graph = Digraph(order, _cycle(order))
        self.assertEqual(graph_cyclicity(graph), len(order))
        self.assertEqual(len(scc(graph)), 1)

    def test_cyclicity_needs_cycles(self):
        """Every node must lie on a cycle"""
        with self.assertRaises(NotOnCycle) as context:
            graph_cyclicity(Digraph(range(3), _cycle([0, 1])))
        self.assertEqual(context.exception.node, 2)


class TestThresholds(unittest.TestCase):
    """Threshold digraphs"""

    def test_low_threshold(self):
        """A threshold below every entry keeps the whole digraph"""
        matrix = MaxMatrix([[1, "1/2"], ["1/4", 0]])
        self.assertEqual(threshold_digraph(matrix, "1/8"), digraph_of(matrix))

    def test_high_threshold(self):
        """A threshold above every entry keeps nothing"""
        matrix = MaxMatrix([[1, "1/2"], ["1/4", 0]])
        self.assertEqual(threshold_digraph(matrix, 2).edges, [])

    def test_filter(self):
        """Entries at least the threshold"""
        matrix = MaxMatrix([[1, "1/2"], ["1/4", 1]])
        graph = threshold_digraph(matrix, "1/2")
        self.assertEqual(graph.edge_set, frozenset([(0, 0), (0, 1), (1, 1)]))

    def test_positive_threshold(self):
        """Thresholds must be positive"""
        with self.assertRaises(PreconditionError):
            threshold_digraph(MaxMatrix([[1]]), 0)

    def test_constant_matrix(self):
        """One level, one component"""
        levels = threshold_spectrum(MaxMatrix([[2, 2], [2, 2]]))
        self.assertEqual(len(levels), 1)
        self.assertEqual(len(levels[0].components.nontrivial), 1)

    def test_diagonal(self):
        """Loops appear one level at a time"""
        levels = threshold_spectrum(MaxMatrix([[1, 0], [0, "1/2"]]))
        self.assertEqual([level.threshold for level in levels],
                         [1, Fraction(1, 2)])
        self.assertEqual(
            [len(level.components.nontrivial) for level in levels], [1, 2]
        )

    def test_zero_matrix(self):
        """No levels without entries"""
        self.assertEqual(threshold_spectrum(MaxMatrix.zeros(2)), [])

    @settings(max_examples=300, deadline=None)
    @given(matrices(max_n=7), sampled_from(ENTRIES[2:]),
           sampled_from(ENTRIES[2:]))
    def test_threshold_monotone(self, matrix, low, high):
        """Raising the threshold only removes edges"""
        low, high = sorted([low, high])
        upper = threshold_digraph(matrix, high)
        lower = threshold_digraph(matrix, low)
        self.assertTrue(upper.is_subgraph_of(lower))
        self.assertTrue(lower.is_subgraph_of(digraph_of(matrix)))
        for component in scc(upper):
            merged = scc(lower).component_of(min(component.nodes))
            self.assertLessEqual(
                component.nodes, scc(lower).components[merged].nodes
            )

    @settings(max_examples=300, deadline=None)
    @given(matrices(max_n=7))
    def test_spectrum_coarsens(self, matrix):
        """Levels decrease and their components only merge"""
        levels = threshold_spectrum(matrix)
        thresholds = [level.threshold for level in levels]
        self.assertEqual(thresholds, sorted(set(thresholds), reverse=True))
        for upper, lower in zip(levels, levels[1:]):
            self.assertNotEqual(upper.components, lower.components)
            for component in upper.components:
                merged = lower.components.component_of(min(component.nodes))
                self.assertLessEqual(
                    component.nodes,
                    lower.components.components[merged].nodes
                )
        if levels:
            self.assertEqual(levels[-1].components,
                             scc(digraph_of(matrix)))


if __name__ == "__main__":
    unittest.main()
