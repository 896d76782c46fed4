#!/usr/bin/env python3
"""Build every baseline tree for one Zipf workload and compare lookup costs.

Walks through the basic objects: a weight profile, the four constructions,
the exact optimum, and the entropy-based sanity bounds.
"""

import treebump as tb

n = 2000
profile = tb.zipf_profile(n, alpha=1.0, seed=7)
h = tb.entropy(profile)
lower, upper = tb.mehlhorn_bounds(h)

print(f"workload: {n} keys, Zipf(alpha=1), seed 7")
print(f"entropy {h:.4f} bits -> any search tree costs within [{lower:.3f}, {upper:.3f}]")
print()

optimal_cost = tb.optimal_cost_only(profile)
print(f"{'builder':10s} {'cost':>8s} {'vs optimal':>11s}")
print(f"{'optimal':10s} {optimal_cost:8.4f} {1.0:10.3f}x")
for kind in ("simple", "splay", "treap", "wb"):
    tree = tb.build(kind, profile, seed=11)
    tree.validate()
    cost = tree.cost()
    print(f"{kind:10s} {cost:8.4f} {cost / optimal_cost:10.3f}x")

print()
print("every tree sits inside the entropy bounds; the gaps above 1.0x are")
print("what the rotation optimizer (see demo 02) goes after")
