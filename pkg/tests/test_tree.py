import numpy as np
import pytest

from treebump import NIL, InvalidTreeError, WeightedTree, tree_from_links, tree_from_text

from conftest import random_tree

# five-node fixture used throughout: in-order ids 0..4 stand for c,b,d,a,e.
# "wide" has root a=3 with children b=1 (children c=0, d=2) and e=4;
# "tall" is the same nodes after lifting b: root b=1, children c=0 and a=3,
# a's children d=2 and e=4.
W5 = [0.2, 0.2, 0.2, 0.2, 0.2]


def wide_tree():
    return tree_from_links(W5, parent=[1, 3, 1, NIL, 3], left=[NIL, 0, NIL, 1, NIL],
                           right=[NIL, 2, NIL, 4, NIL], root=3)


def tall_tree():
    return tree_from_links(W5, parent=[1, NIL, 3, 1, 3], left=[NIL, 0, NIL, 2, NIL],
                           right=[NIL, 3, NIL, 4, NIL], root=1)


def local_optimum_fixture():
    """Two heavy leaves under a light root; no single bump can improve it."""
    return tree_from_links([0.49, 0.02, 0.49], parent=[1, NIL, 1],
                           left=[NIL, 0, NIL], right=[NIL, 2, NIL], root=1)


def test_fixtures_are_valid():
    wide_tree().validate()
    tall_tree().validate()
    local_optimum_fixture().validate()


def test_sibling():
    t = wide_tree()
    assert t.sibling(1) == 4
    assert t.sibling(0) == 2
    # node with a single-child parent: the sibling is absent
    s = tree_from_links([0.5, 0.5], parent=[1, NIL], left=[NIL, 0], right=[NIL, NIL], root=1)
    assert s.sibling(0) == NIL
    with pytest.raises(ValueError):
        t.sibling(3)  # root
    with pytest.raises(ValueError):
        t.sibling(99)


def test_like_minded_child():
    wide = wide_tree()
    assert wide.like_minded_child(1) == 0  # left child of a left-child position
    tall = tall_tree()
    assert tall.like_minded_child(3) == 4  # right child keeps its right child
    assert wide.like_minded_child(0) == NIL  # leaf that is a left child
    with pytest.raises(ValueError):
        wide.like_minded_child(3)


def test_depth():
    t = wide_tree()
    assert t.depth(3) == 1
    assert t.depth(NIL) == 0
    assert t.depth(0) == 3
    assert t.depth(4) == 2


def test_cost_hand_values():
    fix = local_optimum_fixture()
    assert fix.cost() == pytest.approx(0.02 * 1 + 0.49 * 2 + 0.49 * 2, abs=1e-12)
    single = tree_from_links([1.0], parent=[NIL], left=[NIL], right=[NIL], root=0)
    assert single.cost() == pytest.approx(1.0, abs=1e-15)
    # left chain 2 <- 1 <- 0 with weights 6/11, 3/11, 2/11 at depths 3, 2, 1
    chain = tree_from_links([6 / 11, 3 / 11, 2 / 11], parent=[1, 2, NIL],
                            left=[NIL, 0, 1], right=[NIL, NIL, NIL], root=2)
    assert chain.cost() == pytest.approx(26 / 11, abs=1e-12)


def test_rotate_wide_tall_pair():
    t = wide_tree()
    t.rotate(3, "right")
    t.validate()
    assert t.same_links(tall_tree())
    t.rotate(1, "left")
    t.validate()
    assert t.same_links(wide_tree())


def test_rotate_requires_child():
    t = wide_tree()
    with pytest.raises(ValueError):
        t.rotate(0, "right")  # leaf has no left child
    with pytest.raises(ValueError):
        t.rotate(0, "left")
    with pytest.raises(ValueError):
        t.rotate(0, "sideways")


def test_rotate_then_inverse_is_identity(rng):
    for _ in range(50):
        t = random_tree(rng, int(rng.integers(2, 40)))
        x = int(rng.integers(t.n))
        direction = "right" if t.left[x] != NIL else "left"
        if t.left[x] == NIL and t.right[x] == NIL:
            continue
        before = t.copy()
        t.rotate(x, direction)
        t.rotate(int(t.parent[x]), "left" if direction == "right" else "right")
        assert t.same_links(before)
        assert np.allclose(t.subtree_weight, before.subtree_weight, atol=1e-12)


def test_bump_matches_figures():
    t = wide_tree()
    t.bump(1)
    assert t.same_links(tall_tree())
    t.bump(3)
    assert t.same_links(wide_tree())


def test_bump_root_is_noop():
    t = wide_tree()
    before = t.copy()
    t.bump(t.root)
    assert t.same_links(before)


def test_bump_then_bump_former_parent_restores(rng):
    for _ in range(100):
        t = random_tree(rng, int(rng.integers(2, 50)))
        x = int(rng.integers(t.n))
        if x == t.root:
            continue
        former_parent = int(t.parent[x])
        before = t.copy()
        t.bump(x)
        t.bump(former_parent)
        assert t.same_links(before)


def test_random_bumps_keep_invariants(rng):
    t = random_tree(rng, 64)
    for _ in range(500):
        t.bump(int(rng.integers(t.n)))
    t.validate()
    assert list(t.in_order()) == list(range(t.n))


def test_validate_names_corrupted_node():
    t = wide_tree()
    t.parent[0] = 4
    with pytest.raises(InvalidTreeError, match="0"):
        t.validate()


def test_validate_catches_weight_drift():
    t = wide_tree()
    t.subtree_weight[1] += 1e-6
    with pytest.raises(InvalidTreeError, match="subtree weight"):
        t.validate()


def test_validate_catches_total_weight():
    t = tree_from_links([0.3, 0.3], parent=[1, NIL], left=[NIL, 0], right=[NIL, NIL], root=1)
    with pytest.raises(InvalidTreeError, match="total weight"):
        t.validate()


def test_dump_roundtrip(rng):
    for _ in range(20):
        t = random_tree(rng, int(rng.integers(1, 40)))
        back = tree_from_text(t.to_text())
        assert back.same_links(t)
        assert np.allclose(back.weight, t.weight, atol=0)
        assert np.allclose(back.subtree_weight, t.subtree_weight, atol=1e-12)


@pytest.mark.parametrize("text,pattern", [
    ("", "empty"),
    ("0 -1 root 0.5 extra\n", "line 1"),
    ("0 -1 root abc\n", "line 1"),
    ("0 -1 sideways 1.0\n", "side"),
    ("0 -1 root 0.5\n2 0 L 0.5\n", "ids"),
    ("0 -1 root 0.5\n1 -1 root 0.5\n", "root"),
])
def test_dump_parse_errors(text, pattern):
    with pytest.raises(ValueError, match=pattern):
        tree_from_text(text)


def test_depth_matches_traversal(rng):
    t = random_tree(rng, 60)
    depths = {}
    stack = [(t.root, 1)]
    while stack:
        x, d = stack.pop()
        depths[int(x)] = d
        for c in (t.left[x], t.right[x]):
            if c != NIL:
                stack.append((int(c), d + 1))
    for x in range(t.n):
        assert t.depth(x) == depths[x]
