#!/usr/bin/env python3
"""Optimize treaps at increasing sizes and watch cost, bumps and wall time.

The bump count settles around 0.21 per node and the total work stays close
to n log n, so unbalancing a million-node treap is quick.
"""

import time

import treebump as tb

print(f"{'n':>9s} {'build+optimize':>15s} {'bumps/n':>8s} {'cost before':>12s} {'after':>7s}")
tb.optimize(tb.build_treap(tb.zipf_profile(1000, 1.0, 1)))  # warm the kernels

for exp in (4, 5, 6):
    n = 10 ** exp
    start = time.perf_counter()
    profile = tb.zipf_profile(n, alpha=1.0, seed=exp)
    tree = tb.build_treap(profile)
    report = tb.optimize(tree)
    elapsed = time.perf_counter() - start
    print(f"{n:9d} {elapsed:14.2f}s {report.bumps_performed / n:8.3f} "
          f"{report.cost_before:12.4f} {report.cost_after:7.4f}")

print()
print("a capped budget trades cost for time; 1000 bumps on the last tree:")
tree = tb.build_treap(tb.zipf_profile(10 ** 6, 1.0, 6))
report = tb.optimize(tree, tb.OptimizerConfig(max_bumps=1000))
print(f"  {report.bumps_performed} bumps, cost {report.cost_before:.4f} -> "
      f"{report.cost_after:.4f} ({report.terminated.value})")
