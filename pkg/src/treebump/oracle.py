"""Brute-force ground truth for small instances.

Everything here recomputes from first principles: shapes are enumerated
literally, costs are summed by walking from the root with a depth counter,
and merits are measured by actually bumping a cloned tree. None of it reuses
the cached aggregates or the DP recurrences it is meant to check.
"""

from __future__ import annotations

import numpy as np

from .tree import WeightedTree
from .weights import WeightProfile

EXHAUSTIVE_MAX_N = 12
MERIT_RECHECK_MAX_N = 256


def _range_shape_costs(i, j, prefix, cache):
    """Costs of every BST shape on keys i..j, one entry per shape.

    A shape's cost is its range mass plus the costs of its two child shapes;
    sub-shape cost lists are cached so the cross product enumerates each
    shape exactly once. The summation order mirrors the cost decomposition
    used everywhere else, so equal shapes produce bit-equal floats.
    """
    if i > j:
        return (0.0,)
    key = (i, j)
    if key in cache:
        return cache[key]
    mass = prefix[j + 1] - prefix[i]
    out = []
    for r in range(i, j + 1):
        for cl in _range_shape_costs(i, r - 1, prefix, cache):
            for cr in _range_shape_costs(r + 1, j, prefix, cache):
                out.append(cl + cr + mass)
    cache[key] = tuple(out)
    return cache[key]


def exhaustive_optimal(profile: WeightProfile) -> tuple[float, int]:
    """Globally minimal cost over every BST shape, plus the number examined."""
    n = profile.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration capped at n={EXHAUSTIVE_MAX_N}, got {n}")
    prefix = np.zeros(n + 1)
    np.cumsum(profile.probs, out=prefix[1:])
    costs = _range_shape_costs(0, n - 1, prefix.tolist(), {})
    return min(costs), len(costs)


def recompute_cost(t: WeightedTree) -> float:
    """Cost from a fresh root-down walk; ignores every cached field."""
    total = 0.0
    stack = [(int(t.root), 1)]
    while stack:
        x, depth = stack.pop()
        total += float(t.weight[x]) * depth
        l, r = int(t.left[x]), int(t.right[x])
        if l != -1:
            stack.append((l, depth + 1))
        if r != -1:
            stack.append((r, depth + 1))
    return total


def recompute_merits(t: WeightedTree) -> np.ndarray:
    """Measured cost drop of each single bump, via clone-bump-recompute."""
    if t.n > MERIT_RECHECK_MAX_N:
        raise ValueError(f"merit recomputation capped at n={MERIT_RECHECK_MAX_N}, got {t.n}")
    base = recompute_cost(t)
    out = np.zeros(t.n, dtype=np.float64)
    for x in range(t.n):
        if x == t.root:
            continue
        clone = t.copy()
        clone.bump(x)
        out[x] = base - recompute_cost(clone)
    return out
