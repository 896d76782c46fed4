import numpy as np
import pytest

from treebump import WeightProfile, build_simple_random, zipf_profile


def random_profile(rng, n):
    """Positive weights summing to 1, not necessarily Zipf."""
    raw = rng.random(n) + 0.05
    return WeightProfile(probs=raw / raw.sum(), seed=0, alpha=0.0)


def random_tree(rng, n, zipf=False):
    """Random shape with random weights; the standard property-test input."""
    if zipf:
        profile = zipf_profile(n, 1.0, int(rng.integers(1 << 30)))
    else:
        profile = random_profile(rng, n)
    return build_simple_random(profile, int(rng.integers(1 << 30)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
