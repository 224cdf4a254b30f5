#!/usr/bin/env python3
"""
Tests for the invariant-level Cost formulas and CostResult.
"""
import itertools
import sys
import unittest
from pathlib import Path

from hypothesis import given, strategies as st
from pydantic import ValidationError

# Add the project root to Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cost import (
    CostInputError,
    CostResult,
    cost_between,
    cost_lower_bound,
    cost_maxtb_sum,
    cost_parity_ok,
    cost_simple,
    cost_stab_related,
    cost_sum_upper,
    fuchs_tabachnikov_split,
    sign_splits,
    twist_adjacent_cost,
    twist_cost_interval,
)
from src.knot_types import builtin_descriptor, classes_down_to

UNKNOT_PAIRS = [c.pair for c in classes_down_to(builtin_descriptor("unknot"), -8)]


def stabilized_unknot(plus, minus):
    return (-1 - plus - minus, plus - minus)


def brute_force_cost(a, b, limit=8):
    """Fewest stabilizations, counted on both sides, taking classes a and b to a common class."""
    (tb_a, rot_a), (tb_b, rot_b) = a, b
    best = None
    for plus, minus in itertools.product(range(limit + 1), repeat=2):
        total = tb_b - tb_a + plus + minus
        diff = rot_a - rot_b + plus - minus
        if total < 0 or (total + diff) % 2:
            continue
        plus_b, minus_b = (total + diff) // 2, (total - diff) // 2
        if plus_b < 0 or minus_b < 0:
            continue
        cost = plus + minus + plus_b + minus_b
        best = cost if best is None else min(best, cost)
    return best


class TestCostResult(unittest.TestCase):

    def test_interval_collapses(self):
        result = CostResult.interval(2, 2, "test")
        self.assertTrue(result.is_exact)
        self.assertEqual(result.bounds(), (2, 2))

    def test_open_interval(self):
        result = CostResult.interval(1, None, "test")
        self.assertEqual(result.kind, "Interval")
        self.assertEqual(result.bounds(), (1, None))

    def test_rejects_negative_value(self):
        with self.assertRaises(ValidationError):
            CostResult.exact(-1, "test")

    def test_rejects_empty_interval(self):
        with self.assertRaises(ValidationError):
            CostResult.interval(3, 1, "test")

    def test_json_omits_missing_fields(self):
        payload = CostResult.exact(2, "formula").to_json()
        self.assertIn('"value":2', payload)
        self.assertNotIn('"lo"', payload)


class TestFormulas(unittest.TestCase):

    def test_lower_bound(self):
        self.assertEqual(cost_lower_bound((-1, 0), (-2, 1)), 1)
        self.assertEqual(cost_lower_bound((-6, -1), (-6, 1)), 2)

    def test_parity(self):
        self.assertFalse(cost_parity_ok((-1, 0), (-1, 0), 1))
        self.assertTrue(cost_parity_ok((-1, 0), (-2, 1), 1))
        self.assertFalse(cost_parity_ok((-1, 0), (-3, 0), 3))
        with self.assertRaises(CostInputError):
            cost_parity_ok((-1, 0), (-1, 0), -2)

    def test_simple_examples(self):
        self.assertEqual(cost_simple((-1, 0), (-2, 1)), 1)
        self.assertEqual(cost_simple((-1, 0), (-3, 0)), 2)
        self.assertEqual(cost_simple((-6, -1), (-6, 1)), 2)

    def test_simple_is_a_metric_on_unknot_classes(self):
        for a, b in itertools.product(UNKNOT_PAIRS, repeat=2):
            self.assertEqual(cost_simple(a, b), cost_simple(b, a))
            self.assertTrue(cost_parity_ok(a, b, cost_simple(a, b)))
        for a in UNKNOT_PAIRS:
            self.assertEqual(cost_simple(a, a), 0)
        for a, b, c in itertools.product(UNKNOT_PAIRS[:15], repeat=3):
            self.assertLessEqual(cost_simple(a, c), cost_simple(a, b) + cost_simple(b, c))

    def test_twist_adjacent(self):
        self.assertEqual(twist_adjacent_cost(2, 3), 0)
        self.assertEqual(twist_adjacent_cost(3, 2), 2)
        with self.assertRaises(CostInputError):
            twist_adjacent_cost(1, 1)

    def test_twist_interval(self):
        self.assertEqual(twist_cost_interval(3, 2, 2, 3).bounds(), (0, 0))
        chained = twist_cost_interval(1, 5, 4, 2)
        self.assertEqual(chained.bounds(), (0, 6))
        with self.assertRaises(CostInputError):
            twist_cost_interval(1, 3, 2, 3)

    def test_sum_upper(self):
        self.assertEqual(cost_sum_upper(2, 0), 2)
        self.assertEqual(cost_sum_upper(2, 2, 1, 1), 2)
        self.assertEqual(cost_sum_upper(1, 1, 3, 3), 2)

    def test_stab_related_matches_brute_force(self):
        for p, n, q, m in itertools.product(range(5), repeat=4):
            a, b = stabilized_unknot(p, n), stabilized_unknot(q, m)
            self.assertEqual(brute_force_cost(a, b), cost_stab_related(p, n, q, m), (p, n, q, m))

    def test_sum_upper_bounds_brute_force(self):
        for first in itertools.product(range(5), repeat=4):
            for second in itertools.product(range(2), repeat=4):
                a1, b1 = stabilized_unknot(*first[:2]), stabilized_unknot(*first[2:])
                a2, b2 = stabilized_unknot(*second[:2]), stabilized_unknot(*second[2:])
                summed_a = stabilized_unknot(first[0] + second[0], first[1] + second[1])
                summed_b = stabilized_unknot(first[2] + second[2], first[3] + second[3])
                upper = cost_sum_upper(brute_force_cost(a1, b1), brute_force_cost(a2, b2),
                                       brute_force_cost(a1, b2), brute_force_cost(a2, b1))
                self.assertLessEqual(brute_force_cost(summed_a, summed_b), upper, (first, second))

    def test_stab_related(self):
        self.assertEqual(cost_stab_related(2, 1, 0, 0), 3)
        self.assertEqual(cost_stab_related(1, 0, 1, 0), 0)
        with self.assertRaises(CostInputError):
            cost_stab_related(-1, 0, 0, 0)

    def test_maxtb_sum(self):
        self.assertEqual(cost_maxtb_sum(1, 1, True).bounds(), (4, 4))
        self.assertEqual(cost_maxtb_sum(1, 0, False).kind, "Exact")
        self.assertEqual(cost_maxtb_sum(1, 0, False).value, 2)
        self.assertEqual(cost_maxtb_sum(2, 2, False).bounds(), (0, 4))

    @given(st.integers(0, 6), st.booleans())
    def test_maxtb_degenerate_orders_agree(self, r, first):
        r1, r2 = (r, 0) if first else (0, r)
        lo, hi = cost_maxtb_sum(r1, r2, False).bounds()
        self.assertTrue(lo <= cost_maxtb_sum(r1, r2, True).value <= hi)


class TestSignSplits(unittest.TestCase):

    def test_splits_balance_invariants(self):
        a, b = (-1, 0), (-3, 2)
        splits = list(sign_splits(a, b, 2))
        self.assertEqual(splits, [(2, 0, 0, 0)])

    def test_no_split_on_wrong_parity(self):
        self.assertEqual(list(sign_splits((-1, 0), (-1, 0), 1)), [])

    @given(st.sampled_from(UNKNOT_PAIRS), st.sampled_from(UNKNOT_PAIRS))
    def test_split_lands_on_common_class(self, a, b):
        p, n, pt, nt = fuchs_tabachnikov_split(a, b)
        self.assertEqual(p + n + pt + nt, cost_simple(a, b))
        self.assertEqual((a[0] - p - n, a[1] + p - n), (b[0] - pt - nt, b[1] + pt - nt))

    def test_split_rejects_bad_parity(self):
        with self.assertRaises(CostInputError):
            fuchs_tabachnikov_split((-1, 0), (-1, 1))


class TestCostBetween(unittest.TestCase):

    def test_simple_type(self):
        result = cost_between(builtin_descriptor("unknot"), (-1, 0), (-3, 0))
        self.assertEqual((result.kind, result.value), ("Exact", 2))
        self.assertEqual(sum(result.decomposition), 2)

    def test_unrealized_class(self):
        with self.assertRaises(CostInputError):
            cost_between(builtin_descriptor("unknot"), (0, 1), (-1, 0))


if __name__ == "__main__":
    unittest.main()
