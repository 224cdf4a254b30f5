#!/usr/bin/env python3
"""
Tests for knot-type descriptors, sums of descriptors and front generators.
"""
import sys
import tempfile
import unittest
from pathlib import Path

# Add the project root to Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.front_core import builtin_front, classical_invariants, connect_sum, serialize_front, validate_front
from src.knot_types import (
    DescriptorError,
    KnotTypeDescriptor,
    builtin_descriptor,
    classes_down_to,
    dump_descriptor,
    e_front,
    is_reachable,
    load_descriptor,
    prime_peak_check,
    resolve_descriptor,
    standard_front,
    sum_descriptor,
)
from src.moves import PLUS, stabilize


class TestBuiltins(unittest.TestCase):

    def test_peaks(self):
        self.assertEqual(builtin_descriptor("unknot").peaks, ((-1, 0),))
        self.assertEqual(builtin_descriptor("torus(2,3)").peaks, ((1, 0),))
        self.assertEqual(builtin_descriptor("torus(5, 2)").peaks, ((3, 0),))
        self.assertEqual(builtin_descriptor("left_trefoil").peaks, ((-6, -1), (-6, 1)))

    def test_aliases(self):
        self.assertEqual(builtin_descriptor("trefoil-r"), builtin_descriptor("torus(3,2)"))
        self.assertEqual(builtin_descriptor("trefoil-l").name, "left_trefoil")

    def test_errors(self):
        for name in ("figure8", "torus(2,4)", "torus(1,3)", "torus(-2,3)"):
            with self.assertRaises(DescriptorError, msg=name):
                builtin_descriptor(name)

    def test_unique_destabilization_needs_one_peak(self):
        with self.assertRaises(ValueError):
            KnotTypeDescriptor(name="x", simple=True, peaks=((-1, 0), (-3, 0)), unique_destabilization=True)


class TestSums(unittest.TestCase):

    def test_unknot_sum(self):
        d = sum_descriptor(builtin_descriptor("unknot"), builtin_descriptor("unknot"))
        self.assertIs(d.simple, True)
        self.assertEqual(d.peaks, ((-1, 0),))

    def test_torus_sum(self):
        d = sum_descriptor(builtin_descriptor("torus(2,3)"), builtin_descriptor("torus(2,5)"))
        self.assertIs(d.simple, True)
        self.assertEqual(d.peaks, ((5, 0),))

    def test_left_trefoil_self_sum_is_flagged(self):
        left = builtin_descriptor("left_trefoil")
        d = sum_descriptor(left, left)
        self.assertEqual(d.simple, "unknown")
        self.assertEqual(d.peaks, ((-11, -2), (-11, 0), (-11, 2)))
        self.assertTrue(any("candidate non-simple pair" in note for note in d.notes))

    def test_different_types_with_shared_rotation_sum(self):
        left = builtin_descriptor("left_trefoil")
        other = KnotTypeDescriptor(name="mirror_type", simple=True, peaks=((-4, -1), (-4, 1)))
        self.assertIs(sum_descriptor(left, other).simple, False)

    def test_self_sum_with_spread_peaks(self):
        wide = KnotTypeDescriptor(name="wide", simple="unknown", peaks=((-10, -3), (-10, -1), (-10, 1), (-10, 3)))
        d = sum_descriptor(wide, wide)
        self.assertEqual(d.simple, "unknown")
        self.assertTrue(any("candidate non-simple pair" in note for note in d.notes))
        self.assertEqual({tb for tb, _ in d.peaks}, {-19})
        self.assertEqual([rot for _, rot in d.peaks], [-6, -4, -2, 0, 2, 4, 6])

    def test_sum_keeps_only_summed_peaks(self):
        steps = KnotTypeDescriptor(name="steps", simple=True, peaks=((0, 1), (1, 0), (-1, 0)))
        self.assertEqual(sum_descriptor(steps, steps).peaks[0], (3, 0))

    def test_sum_peak_matches_connect_sum(self):
        trefoil = builtin_front("trefoil-r")
        d = sum_descriptor(builtin_descriptor("torus(2,3)"), builtin_descriptor("unknot"))
        self.assertEqual(classical_invariants(connect_sum(trefoil, builtin_front("unknot"))).pair, d.peaks[0])


class TestClasses(unittest.TestCase):

    def test_unknot_triangle_counts(self):
        unknot = builtin_descriptor("unknot")
        for n in range(1, 8):
            self.assertEqual(len(classes_down_to(unknot, -n)), n * (n + 1) // 2)

    def test_unknot_floor_three(self):
        pairs = [c.pair for c in classes_down_to(builtin_descriptor("unknot"), -3)]
        self.assertEqual(pairs, [(-1, 0), (-2, -1), (-2, 1), (-3, -2), (-3, 0), (-3, 2)])

    def test_trefoil_floor_zero(self):
        pairs = [c.pair for c in classes_down_to(builtin_descriptor("torus(2,3)"), 0)]
        self.assertEqual(pairs, [(1, 0), (0, -1), (0, 1)])

    def test_left_trefoil_peaks_merge(self):
        pairs = {c.pair for c in classes_down_to(builtin_descriptor("left_trefoil"), -7)}
        self.assertEqual(pairs, {(-6, -1), (-6, 1), (-7, -2), (-7, 0), (-7, 2)})

    def test_non_simple_refused(self):
        left = builtin_descriptor("left_trefoil")
        with self.assertRaises(DescriptorError):
            classes_down_to(sum_descriptor(left, left), -12)

    def test_reachability(self):
        unknot = builtin_descriptor("unknot")
        self.assertTrue(is_reachable(unknot, -4, 3))
        self.assertFalse(is_reachable(unknot, -2, 0))
        self.assertFalse(is_reachable(unknot, 0, 1))


class TestFronts(unittest.TestCase):

    def test_twist_fronts_are_knots(self):
        for k in range(1, 4):
            for l in range(1, 4):
                self.assertTrue(validate_front(e_front(k, l).word.events).ok)

    def test_twist_invariants(self):
        self.assertEqual(classical_invariants(e_front(2, 1)).pair, (-8, -1))
        self.assertEqual(classical_invariants(e_front(1, 2)).pair, (-8, -1))

    def test_twist_family_shares_invariants(self):
        for total in (3, 4, 5):
            pairs = {classical_invariants(e_front(k, total - k)).pair for k in range(1, total)}
            self.assertEqual(len(pairs), 1, f"k + l = {total}: {pairs}")

    def test_twist_parameters(self):
        with self.assertRaises(DescriptorError):
            e_front(0, 2)

    def test_standard_front(self):
        self.assertEqual(serialize_front(standard_front("unknot", -1, 0).word), "L1 R1")
        self.assertEqual(classical_invariants(standard_front("unknot", -2, 1)).pair, (-2, 1))
        self.assertEqual(classical_invariants(standard_front("unknot", -4, -1)).pair, (-4, -1))
        self.assertEqual(classical_invariants(standard_front("left_trefoil", -7, 2)).pair, (-7, 2))
        with self.assertRaises(DescriptorError):
            standard_front("unknot", -2, 0)

    def test_peak_check(self):
        unknot = builtin_descriptor("unknot")
        self.assertTrue(prime_peak_check(builtin_front("unknot"), unknot).is_peak)
        check = prime_peak_check(builtin_front("trefoil-r"), builtin_descriptor("trefoil-r"))
        self.assertTrue(check.consistent)
        stabilized = prime_peak_check(stabilize(builtin_front("unknot"), PLUS), unknot)
        self.assertFalse(stabilized.nondestabilizable)
        self.assertTrue(stabilized.consistent)


class TestDescriptorJson(unittest.TestCase):

    def test_round_trip(self):
        for name in ("unknot", "torus(2,5)", "left_trefoil"):
            d = builtin_descriptor(name)
            self.assertEqual(load_descriptor(dump_descriptor(d)), d)

    def test_file_round_trip(self):
        d = builtin_descriptor("left_trefoil")
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "left.json"
            path.write_text(dump_descriptor(d), encoding="utf-8")
            self.assertEqual(resolve_descriptor(desc_path=str(path)), d)

    def test_unknown_simpleness_loads(self):
        d = load_descriptor('{"name": "k", "simple": "unknown", "peaks": [[-3, 0], [-3, 2]]}')
        self.assertEqual(d.simple, "unknown")

    def test_bad_descriptors(self):
        for text in ('{"name": "k", "simple": true, "peaks": [[-1, 1]]}',
                     '{"name": "k", "simple": true, "peaks": []}',
                     '{"name": "k", "simple": "maybe", "peaks": [[-1, 0]]}',
                     '{not json'):
            with self.assertRaises(DescriptorError, msg=text):
                load_descriptor(text)
        with self.assertRaises(DescriptorError):
            load_descriptor("/no/such/descriptor.json")
        with self.assertRaises(DescriptorError):
            resolve_descriptor()


if __name__ == "__main__":
    unittest.main()
