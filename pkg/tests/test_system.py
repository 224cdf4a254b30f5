#!/usr/bin/env python3
"""
Test suite for the Legendrian Cost toolkit as a whole.
"""
import sys
import unittest
from pathlib import Path

# Add the project root to Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import config
from src.cost import cost_between, cost_maxtb_sum, cost_simple
from src.front_core import builtin_front, classical_invariants, connect_sum, reverse_orientation
from src.graph import build_cost_graph, graph_distance
from src.isotopy import SearchBudget, cost_search
from src.knot_types import builtin_descriptor, standard_front, sum_descriptor


class TestToolkit(unittest.TestCase):
    """Configuration and the built-in data the other modules rely on."""

    def test_config_loading(self):
        self.assertIsNotNone(config)
        self.assertIsInstance(config.SEARCH_MAX_WIDTH, int)
        self.assertIsInstance(config.SEARCH_MAX_STATES, int)
        self.assertTrue(config.validate())

    def test_default_budget_matches_search_budget(self):
        self.assertEqual(SearchBudget().model_dump(), config.default_budget())

    def test_builtin_fronts_match_descriptors(self):
        for name in ("unknot", "trefoil-r", "trefoil-l"):
            inv = classical_invariants(builtin_front(name))
            self.assertIn(inv.pair, builtin_descriptor(name).peaks, name)

    def test_setup_reads_pinned_requirements(self):
        import setup

        names = setup.requirement_names()
        self.assertIn("pydantic", names)
        self.assertIn("networkx", names)
        self.assertNotIn("", names)


class TestIntegration(unittest.TestCase):
    """Invariants, formulas, search and graph agree with each other."""

    def test_unknot_costs_three_ways(self):
        unknot = builtin_descriptor("unknot")
        graph = build_cost_graph(unknot, -4)
        for a, b in (((-1, 0), (-2, 1)), ((-2, 1), (-3, 0)), ((-1, 0), (-3, 0))):
            fa, fb = standard_front("unknot", *a), standard_front("unknot", *b)
            searched = cost_search(fa, fb)
            self.assertEqual(searched.value, cost_between(unknot, a, b).value)
            self.assertEqual(searched.value, graph_distance(graph, a, b))

    def test_left_trefoil_reversal(self):
        left = builtin_front("trefoil-l")
        a, b = classical_invariants(left), classical_invariants(reverse_orientation(left))
        self.assertEqual(cost_simple(a, b), 2)

    def test_trefoil_sum(self):
        left, right = builtin_front("trefoil-l"), builtin_front("trefoil-r")
        summed = classical_invariants(connect_sum(left, right))
        d = sum_descriptor(builtin_descriptor("left_trefoil"), builtin_descriptor("torus(2,3)"))
        self.assertIn(summed.pair, d.peaks)
        self.assertEqual(cost_maxtb_sum(1, 0, same_rot_order=False).value, 2)


def run_tests():
    """Run all tests."""
    print("🧪 Running Legendrian Cost toolkit tests...\n")

    loader = unittest.TestLoader()
    suite = loader.discover(str(Path(__file__).parent), pattern="test_*.py")

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    print(f"\n📊 Test Results:")
    print(f"  - Tests run: {result.testsRun}")
    print(f"  - Failures: {len(result.failures)}")
    print(f"  - Errors: {len(result.errors)}")
    print(f"  - Skipped: {len(result.skipped)}")

    if result.failures:
        print(f"\n❌ Failures:")
        for test, traceback in result.failures:
            print(f"  - {test}: {traceback}")

    if result.errors:
        print(f"\n❌ Errors:")
        for test, traceback in result.errors:
            print(f"  - {test}: {traceback}")

    if result.wasSuccessful():
        print(f"\n✅ All tests passed!")
    else:
        print(f"\n❌ Some tests failed!")

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_tests()
    sys.exit(0 if success else 1)
