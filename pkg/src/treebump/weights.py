"""Zipf-distributed weight profiles and seeded query sampling.

A profile assigns each key rank a normalized probability. Popularity rank r
(1-based) carries relative mass r**-alpha; which key gets which popularity
rank is decided by a seeded uniform permutation, recorded via the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_LOG2_3 = math.log2(3.0)
_UPPER_DENOM = 1.0 - math.log2(math.sqrt(5.0) - 1.0)
_IMPROVED_LOWER_MIN_H = 14.5


@dataclass(frozen=True, eq=False)
class WeightProfile:
    """Normalized probability per key; immutable once created."""

    probs: np.ndarray
    seed: int
    alpha: float

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", p)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probs must be a non-empty 1-d array")
        if not (p > 0.0).all():
            raise ValueError("all probabilities must be strictly positive")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")

    @property
    def n(self) -> int:
        return int(self.probs.size)


def zipf_ranked_probs(n: int, alpha: float = 1.0) -> np.ndarray:
    """Normalized Zipf masses in popularity order (heaviest first)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= 0.0:
        raise ValueError("alpha must be > 0")
    raw = np.arange(1, n + 1, dtype=np.float64) ** -alpha
    return raw / raw.sum()


def zipf_profile(n: int, alpha: float = 1.0, seed: int = 0) -> WeightProfile:
    """Zipf profile with a seeded uniform rank-to-key permutation.

    Key perm[r] receives popularity rank r+1, so the same seed always places
    the same mass on the same keys.
    """
    ranked = zipf_ranked_probs(n, alpha)
    perm = np.random.default_rng(seed).permutation(n)
    probs = np.empty(n, dtype=np.float64)
    probs[perm] = ranked
    return WeightProfile(probs=probs, seed=int(seed), alpha=float(alpha))


def uniform_profile(n: int) -> WeightProfile:
    """Equal mass on every key; used mostly by tests."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return WeightProfile(probs=np.full(n, 1.0 / n), seed=0, alpha=0.0)


def entropy(profile: WeightProfile) -> float:
    """Shannon entropy of the profile in bits."""
    p = profile.probs
    return float(-(p * np.log2(p)).sum())


def mehlhorn_bounds(h: float) -> tuple[float, float]:
    """Entropy-based bounds on expected lookup cost of the optimal tree.

    Lower bound h / log2(3); for h >= 14.5 the sharper value
    h + h*log2(h) - (h+1)*log2(h+1) replaces it when larger. Upper bound
    2 + h / (1 - log2(sqrt(5) - 1)). Both bracket the weight-balanced
    construction as well.
    """
    if h < 0.0:
        raise ValueError("entropy must be non-negative")
    lower = h / _LOG2_3
    if h >= _IMPROVED_LOWER_MIN_H:
        improved = h + h * math.log2(h) - (h + 1.0) * math.log2(h + 1.0)
        lower = max(lower, improved)
    upper = 2.0 + h / _UPPER_DENOM
    return lower, upper


class QuerySampler:
    """Seeded inverse-CDF sampler drawing keys with the profile's probabilities."""

    def __init__(self, profile: WeightProfile, seed: int):
        self.cumulative = np.cumsum(profile.probs)
        if abs(self.cumulative[-1] - 1.0) > 1e-12:
            raise ValueError("cumulative distribution does not reach 1")
        self.seed = int(seed)
        self._rng = np.random.default_rng(seed)

    def sample_query(self) -> int:
        """One key drawn by binary search on the cumulative array."""
        u = self._rng.random()
        return int(np.searchsorted(self.cumulative, u, side="right"))

    def sample_queries(self, count: int) -> np.ndarray:
        """Batch equivalent of repeated sample_query calls, same stream."""
        u = self._rng.random(count)
        return np.searchsorted(self.cumulative, u, side="right").astype(np.int32)


def profile_to_text(profile: WeightProfile) -> str:
    """One ``key probability`` pair per line."""
    return "".join(f"{k} {p:.17g}\n" for k, p in enumerate(profile.probs))


def profile_from_text(text: str) -> WeightProfile:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'key probability', got {raw!r}")
        try:
            entries[int(parts[0])] = float(parts[1])
        except ValueError as err:
            raise ValueError(f"line {lineno}: {err}") from None
    if not entries:
        raise ValueError("empty profile dump")
    n = len(entries)
    if sorted(entries) != list(range(n)):
        raise ValueError(f"keys must cover 0..{n - 1} exactly once")
    probs = np.array([entries[k] for k in range(n)])
    return WeightProfile(probs=probs, seed=0, alpha=0.0)


def save_profile(profile: WeightProfile, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(profile_to_text(profile))


def load_profile(path) -> WeightProfile:
    with open(path, "r", encoding="ascii") as fh:
        return profile_from_text(fh.read())
