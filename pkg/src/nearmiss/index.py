"""Exact near-miss index, distance profiles and covering radius.

The minimal distance from every outcome to the winning set is obtained with a
multi-source breadth-first traversal of the implicit Hamming graph seeded at
the winners; the index is then a closed-form function of the resulting
distance histogram and is kept as an exact ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .space import LotteryFrame, check_space

UNSEEN = 255


def min_distances(frame: LotteryFrame) -> np.ndarray:
    """uint8 array: entry x is min_{w in W} d(x, w)."""
    q, n = frame.q, frame.n
    size = check_space(q, n)
    dist = np.full(size, UNSEEN, dtype=np.uint8)
    frontier = np.asarray(frame.winning, dtype=np.int64)
    dist[frontier] = 0
    weights = [q**j for j in range(n)]
    level = 0
    while frontier.size:
        level += 1
        found = []
        for w in weights:
            digit = (frontier // w) % q
            base = frontier - digit * w
            for s in range(1, q):
                nb = base + ((digit + s) % q) * w
                nb = nb[dist[nb] == UNSEEN]
                if nb.size:
                    dist[nb] = level
                    found.append(nb)
        frontier = np.unique(np.concatenate(found)) if found else frontier[:0]
    return dist


@dataclass(frozen=True)
class DistanceProfile:
    """counts[k] = number of outcomes whose closest winner is at distance k."""

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def distance_sum(self) -> int:
        return sum(k * c for k, c in enumerate(self.counts))

    @property
    def covering_radius(self) -> int:
        return max(k for k, c in enumerate(self.counts) if c)


def distance_profile(frame: LotteryFrame) -> DistanceProfile:
    counts = np.bincount(min_distances(frame), minlength=frame.n + 1)
    return DistanceProfile(tuple(int(c) for c in counts[: frame.n + 1]))


def index_from_profile(profile: DistanceProfile) -> Fraction:
    return 1 - Fraction(profile.distance_sum, profile.n * profile.total)


@dataclass(frozen=True)
class NearMissReport:
    index: Fraction
    p: Fraction
    seller_value: Fraction
    profile: DistanceProfile

    @property
    def covering_radius(self) -> int:
        return self.profile.covering_radius


def near_miss_index(frame: LotteryFrame) -> NearMissReport:
    prof = distance_profile(frame)
    idx = index_from_profile(prof)
    p = Fraction(prof.counts[0], prof.total)
    return NearMissReport(idx, p, idx - p, prof)


def covering_radius(frame: LotteryFrame) -> int:
    return int(min_distances(frame).max())


def seller_value(frame: LotteryFrame) -> Fraction:
    return near_miss_index(frame).seller_value


def is_perfect_radius1(frame: LotteryFrame) -> bool:
    """True iff every losing outcome has exactly one winner at distance 1."""
    q, n = frame.q, frame.n
    win = frame.mask()
    losers = np.flatnonzero(~win)
    if losers.size == 0:
        return True
    hits = np.zeros(losers.size, dtype=np.int64)
    w = 1
    for _ in range(n):
        digit = (losers // w) % q
        base = losers - digit * w
        for s in range(1, q):
            hits += win[base + ((digit + s) % q) * w]
        w *= q
    return bool(np.all(hits == 1))
