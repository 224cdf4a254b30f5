#!/usr/bin/env python3
"""
Demo script for the Legendrian Cost toolkit.
"""
import random
import sys
from pathlib import Path

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.config import config
from src.cost import cost_maxtb_sum, cost_simple
from src.front_core import builtin_front, classical_invariants, connect_sum, random_front, reverse_orientation
from src.graph import build_cost_graph, export_graph, verify_metric
from src.isotopy import SearchBudget, cost_search
from src.knot_types import builtin_descriptor, standard_front, sum_descriptor
from src.moves import MINUS, PLUS, stabilize


def demo_invariants():
    """Classical invariants of the built-in fronts."""
    print("=== Invariants Demo ===\n")
    for name in ("unknot", "trefoil-r", "trefoil-l"):
        front = builtin_front(name)
        inv = classical_invariants(front)
        print(f"{name:10s} {front}")
        print(f"  tb={inv.tb} rot={inv.rot} writhe={inv.writhe} cusps={inv.up_cusps}+{inv.down_cusps}")
    print()


def demo_unknot_costs():
    """Costs between the unknot and two of its stabilizations, by search and by formula."""
    print("=== Stabilized Unknot Demo ===\n")
    f0 = builtin_front("unknot")
    f1 = stabilize(f0, PLUS)
    f2 = stabilize(f1, MINUS)
    budget = SearchBudget()
    fronts = {"F0": f0, "F1": f1, "F2": f2}
    for name_a, name_b in (("F0", "F1"), ("F1", "F2"), ("F0", "F2")):
        a, b = fronts[name_a], fronts[name_b]
        result = cost_search(a, b, budget)
        formula = cost_simple(classical_invariants(a), classical_invariants(b))
        print(f"Cost({name_a}, {name_b}): search {result.bounds()}, formula {formula}")
    print()


def demo_trefoil_sums():
    """Reversal cost of the left trefoil and the connected-sum example."""
    print("=== Trefoil Demo ===\n")
    left = builtin_front("trefoil-l")
    a, b = classical_invariants(left), classical_invariants(reverse_orientation(left))
    print(f"Cost(K1, reversed K1) = {cost_simple(a, b)}")
    total = sum_descriptor(builtin_descriptor("left_trefoil"), builtin_descriptor("torus(2,3)"))
    print(f"{total.name}: simple={total.simple}, peaks={list(total.peaks)}")
    print(f"Cost(K1#K2, reversed K1#K2) = {cost_maxtb_sum(1, 0, same_rot_order=False).bounds()}")
    summed = connect_sum(left, builtin_front("trefoil-r"))
    print(f"K1#K2 front: {summed} with {classical_invariants(summed).pair}\n")


def demo_graph():
    print("=== Unknot Cost Graph Demo ===\n")
    graph = build_cost_graph(builtin_descriptor("unknot"), -3)
    print(export_graph(graph, "dot"))
    report = verify_metric(graph)
    print(f"metric violations: {len(report.violations)}, formula mismatches: {len(report.formula_mismatches)}\n")


def demo_random_fronts():
    print("=== Random Fronts Demo ===\n")
    rng = random.Random(config.RANDOM_SEED)
    for _ in range(3):
        front = random_front(rng)
        print(f"{front}  ->  {classical_invariants(front).pair}")
    print(f"\nstandard unknot front at (-3, 0): {standard_front('unknot', -3, 0)}\n")


def main():
    """Main demo function."""
    print("Legendrian Cost toolkit - Demo\n")
    demo_invariants()
    demo_unknot_costs()
    demo_trefoil_sums()
    demo_graph()
    demo_random_fronts()
    print("Demo completed!")


if __name__ == "__main__":
    main()
