"""Arena-based weighted binary search tree with rotations and bump moves.

Node ids double as key ranks: an in-order walk of a valid tree visits
0, 1, ..., n-1 in ascending order, so keys are never stored and every
comparison is an integer comparison. Each node carries its own
probability mass and the aggregated mass of its subtree.

All link and weight arrays have one trailing sentinel slot, so that
``arr[NIL]`` (with ``NIL == -1``) resolves to an always-empty node with
zero weight. That keeps both scalar code and vectorised numpy code free
of special cases for absent children.
"""

from __future__ import annotations

from typing import Iterator, Literal

import numpy as np

from . import _kernels

NIL = -1

SUBTREE_WEIGHT_TOL = 1e-9
TOTAL_WEIGHT_TOL = 1e-9


class InvalidTreeError(ValueError):
    """Raised by :meth:`WeightedTree.validate` when an invariant is broken."""


class WeightedTree:
    """Mutable arena of ``n`` weighted nodes linked into a binary search tree.

    A fresh instance is an unlinked arena (``root == NIL``); builders attach
    links and subtree weights before the tree is used. The arrays are public
    on purpose: construction kernels and the optimizer work on them directly.
    """

    __slots__ = ("n", "root", "parent", "left", "right", "weight", "subtree_weight")

    def __init__(self, weights):
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or weights.size == 0:
            raise ValueError("weights must be a non-empty 1-d array")
        n = weights.size
        self.n = int(n)
        self.root = NIL
        # slot n is the sentinel addressed by NIL == -1; int32 links keep the
        # working set small enough to stay cache-friendly at n = 10^6
        self.parent = np.full(n + 1, NIL, dtype=np.int32)
        self.left = np.full(n + 1, NIL, dtype=np.int32)
        self.right = np.full(n + 1, NIL, dtype=np.int32)
        self.weight = np.zeros(n + 1, dtype=np.float64)
        self.weight[:n] = weights
        self.subtree_weight = np.zeros(n + 1, dtype=np.float64)

    # -- basic queries -------------------------------------------------

    @property
    def total_weight(self) -> float:
        return float(self.weight[: self.n].sum())

    def _check_node(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise ValueError(f"node id {x} out of range 0..{self.n - 1}")

    def sibling(self, x: int) -> int:
        """Other child of x's parent, possibly NIL. x must not be the root."""
        self._check_node(x)
        p = self.parent[x]
        if p == NIL:
            raise ValueError(f"node {x} is the root and has no sibling")
        return int(self.right[p]) if self.left[p] == x else int(self.left[p])

    def like_minded_child(self, x: int) -> int:
        """x's left child if x is itself a left child, else x's right child.

        The subtree under this child is exactly the part of the tree that
        rises one level when x is bumped.
        """
        self._check_node(x)
        p = self.parent[x]
        if p == NIL:
            raise ValueError(f"node {x} is the root and has no like-minded child")
        return int(self.left[x]) if self.left[p] == x else int(self.right[x])

    def depth(self, x: int) -> int:
        """Number of nodes on the path from the root to x; depth(NIL) == 0."""
        if x == NIL:
            return 0
        self._check_node(x)
        d = 0
        while x != NIL:
            d += 1
            x = self.parent[x]
            if d > self.n:
                raise InvalidTreeError("parent chain does not terminate (cycle)")
        return d

    def cost(self) -> float:
        """Expected comparisons per lookup: sum of weight(x) * depth(x), O(n).

        Computed as the sum of all subtree weights, which is the same
        quantity: every node contributes its weight once per ancestor level.
        Requires coherent aggregates (any mutation here maintains them);
        oracle.recompute_cost is the independent depth-walk cross-check.
        """
        if self.root == NIL:
            raise InvalidTreeError("tree has no root")
        return float(self.subtree_weight[: self.n].sum())

    def in_order(self) -> Iterator[int]:
        """Yield node ids in in-order sequence; raises on corrupt links."""
        stack: list[int] = []
        x = self.root
        seen = 0
        while stack or x != NIL:
            while x != NIL:
                stack.append(int(x))
                x = self.left[x]
                if len(stack) > self.n:
                    raise InvalidTreeError("left spine longer than tree (cycle)")
            x = stack.pop()
            yield x
            seen += 1
            if seen > self.n:
                raise InvalidTreeError("in-order walk visited more than n nodes")
            x = self.right[x]

    # -- mutation ------------------------------------------------------

    def rotate(self, x: int, direction: Literal["left", "right"]) -> None:
        """Standard single rotation rooted at x.

        A right rotation lifts x's left child into x's place; a left rotation
        lifts the right child. In-order sequence is preserved. Exactly the two
        subtree weights that change are recomputed from children, never by
        delta updates, so repeated rotations cannot accumulate drift.
        """
        self._check_node(x)
        parent, left, right = self.parent, self.left, self.right
        if direction == "right":
            child = int(left[x])
            if child == NIL:
                raise ValueError(f"right rotation at {x} needs a left child")
            moved = int(right[child])
            left[x] = moved
            right[child] = x
        elif direction == "left":
            child = int(right[x])
            if child == NIL:
                raise ValueError(f"left rotation at {x} needs a right child")
            moved = int(left[child])
            right[x] = moved
            left[child] = x
        else:
            raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")

        up = int(parent[x])
        if moved != NIL:
            parent[moved] = x
        parent[x] = child
        parent[child] = up
        if up == NIL:
            self.root = child
        elif left[up] == x:
            left[up] = child
        else:
            right[up] = child

        sw, w = self.subtree_weight, self.weight
        sw[x] = w[x] + sw[left[x]] + sw[right[x]]
        sw[child] = w[child] + sw[left[child]] + sw[right[child]]

    def bump(self, x: int) -> None:
        """Raise x one level by rotating at its parent; bumping the root is a no-op."""
        self._check_node(x)
        p = int(self.parent[x])
        if p == NIL:
            return
        self.rotate(p, "right" if self.left[p] == x else "left")

    # -- bookkeeping ---------------------------------------------------

    def recompute_subtree_weights(self) -> None:
        """Rebuild every subtree weight from the link structure."""
        _kernels.fill_subtree_weights(
            self.left, self.right, self.weight, self.subtree_weight, self.root, self.n
        )

    def copy(self) -> "WeightedTree":
        dup = WeightedTree.__new__(WeightedTree)
        dup.n = self.n
        dup.root = self.root
        dup.parent = self.parent.copy()
        dup.left = self.left.copy()
        dup.right = self.right.copy()
        dup.weight = self.weight.copy()
        dup.subtree_weight = self.subtree_weight.copy()
        return dup

    def same_links(self, other: "WeightedTree") -> bool:
        """Link-level structural equality (root and all parent/child arrays)."""
        return (
            self.n == other.n
            and self.root == other.root
            and np.array_equal(self.parent, other.parent)
            and np.array_equal(self.left, other.left)
            and np.array_equal(self.right, other.right)
        )

    def validate(self) -> None:
        """Check every structural invariant; raise InvalidTreeError naming offenders.

        Checks: sentinel integrity, a single root, mutual parent/child link
        consistency, reachability of all n nodes, in-order sequence equal to
        0..n-1, per-node subtree-weight coherence and unit total weight.
        """
        n = self.n
        parent, left, right = self.parent, self.left, self.right
        problems: list[str] = []

        if parent[NIL] != NIL or left[NIL] != NIL or right[NIL] != NIL:
            problems.append("sentinel slot links were overwritten")
        if self.weight[NIL] != 0.0 or self.subtree_weight[NIL] != 0.0:
            problems.append("sentinel slot weights were overwritten")

        ids = np.arange(n)
        roots = ids[parent[:n] == NIL]
        if roots.size != 1:
            problems.append(f"expected exactly one root, found {roots.tolist()}")
        elif self.root != roots[0]:
            problems.append(f"root field {self.root} but parentless node is {roots[0]}")

        for name, child in (("left", left), ("right", right)):
            c = child[:n]
            mask = c != NIL
            bad = ids[mask][parent[c[mask]] != ids[mask]]
            if bad.size:
                problems.append(f"{name} child of node(s) {bad.tolist()} has wrong parent link")
        both = ids[(left[:n] == right[:n]) & (left[:n] != NIL)]
        if both.size:
            problems.append(f"node(s) {both.tolist()} have identical left and right children")
        nonroot = ids[parent[:n] != NIL]
        p = parent[nonroot]
        is_child = (left[p] == nonroot) | (right[p] == nonroot)
        orphaned = nonroot[~is_child]
        if orphaned.size:
            problems.append(f"node(s) {orphaned.tolist()} not linked back from their parent")

        if not problems:
            try:
                order = list(self.in_order())
            except InvalidTreeError as err:
                problems.append(str(err))
            else:
                if len(order) != n:
                    problems.append(f"reached {len(order)} of {n} nodes from the root")
                elif order != list(range(n)):
                    first = next(i for i, v in enumerate(order) if v != i)
                    problems.append(f"in-order walk out of key order at position {first} (node {order[first]})")

        expected = self.weight[:n] + self.subtree_weight[left[:n]] + self.subtree_weight[right[:n]]
        drift = np.abs(self.subtree_weight[:n] - expected)
        bad = ids[drift > SUBTREE_WEIGHT_TOL]
        if bad.size:
            problems.append(f"subtree weight incoherent at node(s) {bad.tolist()[:8]}")
        total = self.total_weight
        if abs(total - 1.0) > TOTAL_WEIGHT_TOL:
            problems.append(f"total weight {total} is not 1")

        if problems:
            raise InvalidTreeError("; ".join(problems))

    # -- text dump -----------------------------------------------------

    def to_text(self) -> str:
        """Serialise as one node per line: ``id parent side weight``."""
        lines = []
        for i in range(self.n):
            p = int(self.parent[i])
            if p == NIL:
                side = "root"
            else:
                side = "L" if self.left[p] == i else "R"
            lines.append(f"{i} {p} {side} {self.weight[i]:.17g}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_text())


def tree_from_links(weights, parent, left, right, root: int) -> WeightedTree:
    """Assemble a tree from explicit links, recomputing subtree weights."""
    t = WeightedTree(weights)
    t.parent[: t.n] = parent
    t.left[: t.n] = left
    t.right[: t.n] = right
    t.root = int(root)
    t.recompute_subtree_weights()
    return t


def tree_from_text(text: str) -> WeightedTree:
    """Parse the dump format written by :meth:`WeightedTree.to_text` and validate."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'id parent side weight', got {raw!r}")
        try:
            i, p, side, w = int(parts[0]), int(parts[1]), parts[2], float(parts[3])
        except ValueError as err:
            raise ValueError(f"line {lineno}: {err}") from None
        if side not in ("L", "R", "root"):
            raise ValueError(f"line {lineno}: side must be L, R or root, got {side!r}")
        rows.append((i, p, side, w))
    if not rows:
        raise ValueError("empty tree dump")

    n = len(rows)
    seen = sorted(r[0] for r in rows)
    if seen != list(range(n)):
        raise ValueError(f"node ids must cover 0..{n - 1} exactly once")

    weights = np.zeros(n)
    t = WeightedTree.__new__(WeightedTree)  # placeholder; rebuilt below
    parent = np.full(n, NIL, dtype=np.int64)
    left = np.full(n, NIL, dtype=np.int64)
    right = np.full(n, NIL, dtype=np.int64)
    root = NIL
    for i, p, side, w in rows:
        weights[i] = w
        if side == "root":
            if root != NIL:
                raise ValueError(f"two roots in dump: {root} and {i}")
            if p != NIL:
                raise ValueError(f"root node {i} lists parent {p}")
            root = i
            continue
        if not 0 <= p < n:
            raise ValueError(f"node {i} has parent {p} out of range")
        parent[i] = p
        if side == "L":
            if left[p] != NIL:
                raise ValueError(f"node {p} has two left children")
            left[p] = i
        else:
            if right[p] != NIL:
                raise ValueError(f"node {p} has two right children")
            right[p] = i
    if root == NIL:
        raise ValueError("dump has no root line")

    t = tree_from_links(weights, parent, left, right, root)
    t.validate()
    return t


def load_tree(path) -> WeightedTree:
    with open(path, "r", encoding="ascii") as fh:
        return tree_from_text(fh.read())
