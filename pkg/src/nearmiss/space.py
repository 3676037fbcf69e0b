"""q-ary Hamming space: outcome encoding, distances and lottery frames.

Outcomes of Q^n are stored as radix-q integers with the first coordinate as
the least significant digit.  Symbols are always 0..q-1; human-readable
labels only exist in the frame file layer (see :mod:`nearmiss.io`).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_SPACE = 2**27

_max_space: int | None = None


class LimitError(RuntimeError):
    """A size cap or search budget was exceeded."""


class SpaceTooLarge(LimitError):
    pass


class BudgetExceeded(LimitError):
    pass


def max_space() -> int:
    """Largest q**n that dense enumeration will accept.

    Resolution order: :func:`set_max_space`, then ``NML_MAX_SPACE``, then
    ``DEFAULT_MAX_SPACE``.
    """
    if _max_space is not None:
        return _max_space
    env = os.environ.get("NML_MAX_SPACE")
    if env:
        return int(env)
    return DEFAULT_MAX_SPACE


def set_max_space(limit: int | None) -> None:
    global _max_space
    if limit is not None and limit < 1:
        raise ValueError("max space must be positive")
    _max_space = limit


def check_space(q: int, n: int) -> int:
    size = q**n
    cap = max_space()
    if size > cap:
        raise SpaceTooLarge(
            f"q^n = {q}^{n} = {size} outcomes exceeds the enumeration cap of {cap} "
            "(raise it with --max-space or NML_MAX_SPACE)"
        )
    return size


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return sum(1 for a, b in zip(x, y) if a != b)


def encode(digits: Sequence[int], q: int) -> int:
    value = 0
    for d in reversed(digits):
        if not 0 <= d < q:
            raise ValueError(f"digit out of range: {d} not in [0, {q})")
        value = value * q + d
    return value


def decode(index: int, q: int, n: int) -> tuple[int, ...]:
    if not 0 <= index < q**n:
        raise ValueError(f"outcome index {index} out of range for q={q}, n={n}")
    out = []
    for _ in range(n):
        index, d = divmod(index, q)
        out.append(d)
    return tuple(out)


def index_distance(i: int, j: int, q: int, n: int) -> int:
    d = 0
    for _ in range(n):
        i, a = divmod(i, q)
        j, b = divmod(j, q)
        d += a != b
    return d


def neighbors(index: int, q: int, n: int) -> Iterator[int]:
    """Yield the n*(q-1) outcomes at distance exactly 1 from ``index``."""
    if not 0 <= index < q**n:
        raise ValueError(f"outcome index {index} out of range for q={q}, n={n}")
    weight = 1
    rest = index
    for _ in range(n):
        rest, d = divmod(rest, q)
        base = index - d * weight
        for s in range(q):
            if s != d:
                yield base + s * weight
        weight *= q


def digit_matrix(q: int, n: int) -> np.ndarray:
    """(q**n, n) array; row i holds the digits of outcome i."""
    size = check_space(q, n)
    idx = np.arange(size, dtype=np.int64)
    cols = np.empty((size, n), dtype=np.int16)
    for j in range(n):
        cols[:, j] = idx % q
        idx //= q
    return cols


def distance_matrix(q: int, n: int) -> np.ndarray:
    """Full pairwise Hamming distances as uint8; only for small spaces."""
    digits = digit_matrix(q, n)
    size = digits.shape[0]
    if size * size > 2**26:
        raise SpaceTooLarge(f"pairwise distance matrix for {size} outcomes is too large")
    out = np.zeros((size, size), dtype=np.uint8)
    for j in range(n):
        col = digits[:, j]
        out += (col[:, None] != col[None, :]).astype(np.uint8)
    return out


@dataclass(frozen=True)
class LotteryFrame:
    """A lottery (q, n, W) with W stored as sorted outcome indices."""

    q: int
    n: int
    winning: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size q must be >= 2, got {self.q}")
        if self.n < 1:
            raise ValueError(f"length n must be >= 1, got {self.n}")
        w = tuple(int(i) for i in self.winning)
        object.__setattr__(self, "winning", w)
        if not w:
            raise ValueError("winning set must be nonempty")
        size = self.q**self.n
        for a, b in zip(w, w[1:]):
            if a >= b:
                raise ValueError("winning outcomes must be strictly increasing")
        if w[0] < 0 or w[-1] >= size:
            raise ValueError(f"winning outcome out of range for q={self.q}, n={self.n}")

    @classmethod
    def from_indices(cls, q: int, n: int, indices: Iterable[int]) -> "LotteryFrame":
        return cls(q, n, tuple(sorted(set(int(i) for i in indices))))

    @classmethod
    def from_digits(cls, q: int, n: int, vectors: Iterable[Sequence[int]]) -> "LotteryFrame":
        idx = []
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"n mismatch: outcome {list(v)} has length {len(v)}, expected {n}")
            idx.append(encode(v, q))
        return cls.from_indices(q, n, idx)

    @classmethod
    def full(cls, q: int, n: int) -> "LotteryFrame":
        return cls(q, n, tuple(range(check_space(q, n))))

    @property
    def size(self) -> int:
        return self.q**self.n

    @property
    def win_probability(self) -> Fraction:
        return Fraction(len(self.winning), self.size)

    def digits(self) -> list[tuple[int, ...]]:
        return [decode(i, self.q, self.n) for i in self.winning]

    def mask(self) -> np.ndarray:
        out = np.zeros(check_space(self.q, self.n), dtype=bool)
        out[np.asarray(self.winning, dtype=np.int64)] = True
        return out

    def __len__(self) -> int:
        return len(self.winning)
