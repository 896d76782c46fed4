#!/usr/bin/env python3
"""Step through the rotation hill climber on tiny trees.

Shows merits (the exact cost drop a single bump buys), watches the
optimizer run one step at a time, and ends on the classic example of a
tree the climber cannot improve even though a better shape exists.
"""

import numpy as np

import treebump as tb
from treebump import NIL, MeritQueue, optimize_step

EPS = 1e-12

# three keys, masses 6/11, 3/11, 2/11, rooted at the median key
tree = tb.tree_from_links([6 / 11, 3 / 11, 2 / 11],
                          parent=[1, NIL, 1], left=[NIL, 0, NIL],
                          right=[NIL, 2, NIL], root=1)
print("median-rooted tree, cost", round(tree.cost(), 4))
print("merits per node:", np.round(tb.merit_all(tree), 4))
print("  (key 0 carries 6/11 of the mass; raising it pays 1/11 per lookup)")

queue = MeritQueue(tree, EPS)
while True:
    bumped = optimize_step(tree, queue, EPS)
    if bumped is None:
        break
    print(f"bumped node {bumped}; cost now {tree.cost():.4f}")
print("quiescent. optimal cost for this workload:",
      round(tb.optimal_cost_only(tb.WeightProfile(
          probs=np.array([6 / 11, 3 / 11, 2 / 11]), seed=0, alpha=1.0)), 4))
print()

# the stuck case: two heavy leaves under a light root
stuck = tb.tree_from_links([0.49, 0.02, 0.49],
                           parent=[1, NIL, 1], left=[NIL, 0, NIL],
                           right=[NIL, 2, NIL], root=1)
report = tb.optimize(stuck)
print("two 0.49 leaves under a 0.02 root:")
print("  merits:", np.round(tb.merit_all(stuck), 4), "-> nothing positive")
print(f"  optimizer: {report.bumps_performed} bumps, cost stays {report.cost_after:.2f}")
best, shapes = tb.oracle.exhaustive_optimal(
    tb.WeightProfile(probs=np.array([0.49, 0.02, 0.49]), seed=0, alpha=0.0))
print(f"  yet the best of all {shapes} shapes costs {best:.2f}:")
print("  single rotations cannot reach it, so the climb is stuck at a local optimum")
