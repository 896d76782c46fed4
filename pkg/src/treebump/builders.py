"""Baseline tree constructions: simple random, treap, weight-balanced, splay.

All builders are pure functions of (profile, seed) and return trees whose
subtree weights are already coherent.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .tree import WeightedTree
from .weights import QuerySampler, WeightProfile

SPLAY_QUERIES_PER_NODE = 3


def build_simple_random(profile: WeightProfile, seed: int) -> WeightedTree:
    """Insert keys in a seeded uniformly random order into a plain BST."""
    t = WeightedTree(profile.probs)
    order = np.random.default_rng(seed).permutation(t.n).astype(np.int32)
    t.root = int(_kernels.bst_insert(order, t.parent, t.left, t.right, t.weight, t.subtree_weight))
    return t


def build_treap(profile: WeightProfile) -> WeightedTree:
    """Insert keys in strictly decreasing probability order (ties by ascending key).

    Built in O(n) as the max-Cartesian tree over the weights, which yields
    exactly the same tree as the sequential insertions.
    """
    t = WeightedTree(profile.probs)
    t.root = int(_kernels.max_weight_cartesian(t.parent, t.left, t.right, t.weight, t.n))
    t.recompute_subtree_weights()
    return t


def build_weight_balanced(profile: WeightProfile) -> WeightedTree:
    """Each range is rooted at the key whose heavier residual side is lightest."""
    t = WeightedTree(profile.probs)
    prefix = np.zeros(t.n + 1, dtype=np.float64)
    np.cumsum(profile.probs, out=prefix[1:])
    t.root = int(_kernels.weight_balanced_build(prefix, t.parent, t.left, t.right, t.subtree_weight, t.n))
    return t


def build_splay(profile: WeightProfile, seed: int) -> WeightedTree:
    """Warm a random tree with 3n profile-distributed lookups, splaying each target.

    Splaying uses the usual bottom-up zig / zig-zig / zig-zag steps, so hot
    keys end up near the root.
    """
    t = build_simple_random(profile, seed)
    queries = QuerySampler(profile, seed).sample_queries(SPLAY_QUERIES_PER_NODE * t.n)
    t.root = int(
        _kernels.splay_queries(t.parent, t.left, t.right, t.weight, t.subtree_weight, t.root, queries)
    )
    return t


BUILDERS = {
    "simple": build_simple_random,
    "treap": lambda profile, seed: build_treap(profile),
    "wb": lambda profile, seed: build_weight_balanced(profile),
    "splay": build_splay,
}


def build(kind: str, profile: WeightProfile, seed: int) -> WeightedTree:
    """Dispatch by CLI name: simple, treap, wb or splay."""
    try:
        fn = BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown builder {kind!r}; expected one of {sorted(BUILDERS)}") from None
    return fn(profile, seed)
