"""Exact minimum-cost binary search tree by dynamic programming.

Costs and roots for every key range are tabulated with the classic
root-monotonicity speedup, giving O(n^2) time and memory. Tables are packed
upper triangles; root indices are 32-bit to halve the footprint. Instances
above the configured cap are refused rather than silently thrashing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .tree import NIL, WeightedTree
from .weights import WeightProfile

DEFAULT_SIZE_CAP = 20_000


class SizeCapExceeded(ValueError):
    """Instance larger than the configured quadratic-memory cap."""


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise SizeCapExceeded(
            f"n={n} exceeds the optimal-tree cap of {cap} "
            f"(quadratic tables would need ~{12 * n * (n + 1) // 2 / 1e9:.1f} GB)"
        )


@dataclass
class DpTables:
    """Packed triangular DP state; range (i, j) lives at base(i) + j."""

    n: int
    cost: np.ndarray     # float64, n*(n+1)/2 entries
    root: np.ndarray     # int32, same shape
    prefix: np.ndarray   # float64, n+1 cumulative weights

    def _at(self, i: int, j: int) -> int:
        if not 0 <= i <= j < self.n:
            raise IndexError(f"range ({i}, {j}) out of bounds for n={self.n}")
        return i * self.n - (i * (i - 1)) // 2 + (j - i)

    def cost_at(self, i: int, j: int) -> float:
        return float(self.cost[self._at(i, j)])

    def root_at(self, i: int, j: int) -> int:
        return int(self.root[self._at(i, j)])


def fill_tables(profile: WeightProfile, cap: int = DEFAULT_SIZE_CAP) -> DpTables:
    n = profile.n
    _check_cap(n, cap)
    prefix = np.zeros(n + 1, dtype=np.float64)
    np.cumsum(profile.probs, out=prefix[1:])
    total = n * (n + 1) // 2
    cost = np.empty(total, dtype=np.float64)
    root = np.empty(total, dtype=np.int32)
    _kernels.optimal_fill(prefix, cost, root, n)
    return DpTables(n=n, cost=cost, root=root, prefix=prefix)


def optimal_tree(profile: WeightProfile, cap: int = DEFAULT_SIZE_CAP) -> tuple[WeightedTree, float]:
    """Minimum-cost tree over keys 0..n-1 and its cost.

    Ties between equally good roots always resolve to the smallest index, so
    the construction is reproducible.
    """
    tables = fill_tables(profile, cap)
    n = tables.n
    t = WeightedTree(profile.probs)
    # materialise the tree from the root table, range by range
    stack = [(0, n - 1, NIL, -1)]
    while stack:
        i, j, par, side = stack.pop()
        r = tables.root_at(i, j)
        t.parent[r] = par
        t.subtree_weight[r] = tables.prefix[j + 1] - tables.prefix[i]
        if side == 0:
            t.left[par] = r
        elif side == 1:
            t.right[par] = r
        else:
            t.root = r
        if r > i:
            stack.append((i, r - 1, r, 0))
        if r < j:
            stack.append((r + 1, j, r, 1))
    return t, tables.cost_at(0, n - 1)


def optimal_cost_only(profile: WeightProfile, cap: int = DEFAULT_SIZE_CAP) -> float:
    """Cost of the optimal tree without retaining the root table."""
    n = profile.n
    _check_cap(n, cap)
    prefix = np.zeros(n + 1, dtype=np.float64)
    np.cumsum(profile.probs, out=prefix[1:])
    return float(_kernels.optimal_cost_fill(prefix, n))
