"""Rotation hill-climbing: bump the highest-merit node until nothing improves.

The merit of a non-root node x is the exact drop in expected lookup cost
from raising x one level:

    merit(x) = weight(x) + subtree_weight(like_minded_child(x))
             - weight(parent(x)) - subtree_weight(sibling(x))

Bumping x changes subtree weights for just x and its former parent, and
changes merits for exactly five nodes: the rotated pair and the roots of
the three subtrees they carry. That makes each step O(1) plus one heap
update, so driving a tree to quiescence costs O((n + k) log min(n, k))
for k bumps.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import _kernels
from .tree import NIL, WeightedTree


class Termination(str, Enum):
    QUIESCENT = "quiescent"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class OptimizerConfig:
    epsilon: float = 1e-12          # merits at or below this never trigger a bump
    max_bumps: Optional[int] = None
    record_trace: bool = False
    depth_limit: Optional[int] = None  # reserved hook, not implemented

    def __post_init__(self):
        if self.epsilon < 0.0:
            raise ValueError("epsilon must be >= 0")
        if self.max_bumps is not None and self.max_bumps < 0:
            raise ValueError("max_bumps must be >= 0 when set")


@dataclass
class OptimizeReport:
    bumps_performed: int
    cost_before: float
    cost_after: float
    terminated: Termination
    bumped_nodes: Optional[list[int]] = None
    cost_trace: Optional[list[float]] = None


def merit(t: WeightedTree, x: int) -> float:
    """Exact cost decrease from bumping x; 0.0 for the root."""
    t._check_node(x)
    p = t.parent[x]
    if p == NIL:
        return 0.0
    w, sw = t.weight, t.subtree_weight
    if t.left[p] == x:
        lik, sib = t.left[x], t.right[p]
    else:
        lik, sib = t.right[x], t.left[p]
    return float(w[x] + sw[lik] - w[p] - sw[sib])


def merit_all(t: WeightedTree) -> np.ndarray:
    """Merits for all nodes in one vectorised O(n) pass (root entry is 0)."""
    n = t.n
    ids = np.arange(n)
    par = t.parent[:n]
    is_left = t.left[par] == ids
    lik = np.where(is_left, t.left[:n], t.right[:n])
    sib = np.where(is_left, t.right[par], t.left[par])
    w, sw = t.weight, t.subtree_weight
    out = w[ids] + sw[lik] - w[par] - sw[sib]
    out[par == NIL] = 0.0
    return out


class MeritQueue:
    """Lazy max-priority queue over node merits.

    Entries are (-merit, node, stamp); an entry is valid only while its stamp
    matches the node's current stamp, so stale entries are skipped on pop
    instead of being deleted in place. Every node whose merit exceeds the
    queue's epsilon owns at least one valid entry.
    """

    __slots__ = ("epsilon", "_heap", "_stamp")

    def __init__(self, t: WeightedTree, epsilon: float = 1e-12):
        self.epsilon = float(epsilon)
        self._stamp = np.zeros(t.n, dtype=np.int64)
        merits = merit_all(t)
        self._heap = [(-m, x, 0) for x, m in enumerate(merits.tolist()) if m > epsilon]
        heapq.heapify(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def refresh(self, t: WeightedTree, x: int) -> None:
        """Invalidate x's old entries and enqueue its current merit if positive."""
        self._stamp[x] += 1
        m = merit(t, x)
        if m > self.epsilon:
            heapq.heappush(self._heap, (-m, x, int(self._stamp[x])))

    def pop_best(self) -> Optional[tuple[int, float]]:
        """Remove and return (node, merit) for the best valid entry, if any.

        Equal merits resolve to the lowest node id.
        """
        heap = self._heap
        while heap:
            neg, x, stamp = heapq.heappop(heap)
            if stamp == self._stamp[x]:
                return x, -neg
        return None

    def peek_best(self) -> Optional[tuple[int, float]]:
        """Like pop_best but leaves the entry in the queue."""
        best = self.pop_best()
        if best is not None:
            x, m = best
            heapq.heappush(self._heap, (-m, x, int(self._stamp[x])))
        return best


def optimize_step(t: WeightedTree, q: MeritQueue, epsilon: float) -> Optional[int]:
    """Bump one maximal-merit node if its merit exceeds epsilon.

    Returns the bumped node, or None when the tree is quiescent. The queue is
    left consistent: the five nodes whose merits can change get fresh entries.
    """
    best = q.pop_best()
    if best is None:
        return None
    x, m = best
    if merit(t, x) <= epsilon:  # defensive revalidation; valid entries stay current
        return None
    former_parent = int(t.parent[x])
    t.bump(x)
    # the five affected nodes: the rotated pair plus the three carried subtree roots
    affected = {x, former_parent,
                int(t.left[x]), int(t.right[x]),
                int(t.left[former_parent]), int(t.right[former_parent])}
    affected.discard(NIL)
    for a in sorted(affected):
        q.refresh(t, a)
    return x


def optimize(t: WeightedTree, cfg: OptimizerConfig | None = None) -> OptimizeReport:
    """Drive t to quiescence (or a bump budget) by always bumping the best node.

    Each accepted bump strictly lowers the cost by the popped merit, so the
    loop terminates; with the default epsilon the bump count is also bounded
    by cost_before / epsilon even under floating-point noise.
    """
    cfg = cfg or OptimizerConfig()
    if cfg.depth_limit is not None:
        raise NotImplementedError("depth-limited bumping is reserved for future work")
    cost_before = t.cost()

    if not cfg.record_trace:
        # compiled twin of the loop below; bump-for-bump identical (see tests)
        budget = -1 if cfg.max_bumps is None else cfg.max_bumps
        root, bumps, exhausted = _kernels.optimize_loop(
            t.parent, t.left, t.right, t.weight, t.subtree_weight,
            t.root, cfg.epsilon, budget,
        )
        t.root = int(root)
        return OptimizeReport(
            bumps_performed=int(bumps),
            cost_before=cost_before,
            cost_after=t.cost(),
            terminated=Termination.BUDGET_EXHAUSTED if exhausted else Termination.QUIESCENT,
        )

    q = MeritQueue(t, cfg.epsilon)
    bumps = 0
    trace_nodes: list[int] = []
    trace_costs: list[float] = []
    while True:
        if cfg.max_bumps is not None and bumps >= cfg.max_bumps:
            terminated = (Termination.BUDGET_EXHAUSTED if q.peek_best() is not None
                          else Termination.QUIESCENT)
            break
        stepped = optimize_step(t, q, cfg.epsilon)
        if stepped is None:
            terminated = Termination.QUIESCENT
            break
        bumps += 1
        trace_nodes.append(stepped)
        trace_costs.append(t.cost())
    return OptimizeReport(
        bumps_performed=bumps,
        cost_before=cost_before,
        cost_after=t.cost(),
        terminated=terminated,
        bumped_nodes=trace_nodes,
        cost_trace=trace_costs,
    )
