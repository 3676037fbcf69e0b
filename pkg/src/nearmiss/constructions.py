"""Frame transformations and explicit code constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .field import FieldTable, gf, is_supported
from .index import covering_radius
from .space import LotteryFrame, check_space


def _integer_root(value: int, t: int) -> int | None:
    r = round(value ** (1.0 / t))
    for c in (r - 1, r, r + 1):
        if c >= 2 and c**t == value:
            return c
    return None


def fold_alphabet(frame: LotteryFrame, t: int, base: int | None = None) -> LotteryFrame:
    """Rewrite each symbol of an alphabet of size base**t as t base-``base`` symbols.

    Symbol ``s`` expands to its t base-``base`` digits, least significant
    first, so coordinate i of the input becomes coordinates i*t .. i*t+t-1.
    The winning set keeps its size.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if base is None:
        base = _integer_root(frame.q, t) if t > 1 else frame.q
        if base is None:
            raise ValueError(f"alphabet size {frame.q} is not a perfect {t}-th power")
    if base**t != frame.q:
        raise ValueError(f"alphabet size {frame.q} is not {base}^{t}")
    out = []
    for w in frame.digits():
        expanded = []
        for s in w:
            for _ in range(t):
                s, d = divmod(s, base)
                expanded.append(d)
        out.append(expanded)
    return LotteryFrame.from_digits(base, frame.n * t, out)


def split_symbols(frame: LotteryFrame, t: int) -> LotteryFrame:
    """Replace every symbol a by t copies a*t + i; each winner spawns t**n winners."""
    if t < 1:
        raise ValueError("t must be >= 1")
    q, n = frame.q, frame.n
    check_space(t * q, n)
    digits = np.array(frame.digits(), dtype=np.int64)  # |W| x n
    offsets = np.array(list(itertools.product(range(t), repeat=n)), dtype=np.int64)  # t^n x n
    new = digits[:, None, :] * t + offsets[None, :, :]
    weights = (t * q) ** np.arange(n, dtype=np.int64)
    return LotteryFrame.from_indices(t * q, n, (new @ weights).ravel().tolist())


def extend_length(frame: LotteryFrame) -> LotteryFrame:
    """W' = W x Q: append a free coordinate (most significant digit)."""
    shift = frame.size
    return LotteryFrame(
        frame.q, frame.n + 1, tuple(w + s * shift for s in range(frame.q) for w in frame.winning)
    )


# covering radius is preserved by the same product construction
lift_code = extend_length


@dataclass(frozen=True)
class HammingCodeParams:
    q: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not is_supported(self.q):
            raise ValueError(f"q={self.q} is not a supported prime power")

    @property
    def n(self) -> int:
        return (self.q**self.m - 1) // (self.q - 1)

    @property
    def code_size(self) -> int:
        return self.q ** (self.n - self.m)


def parity_check_matrix(params: HammingCodeParams) -> np.ndarray:
    """m x n matrix whose columns are the normalized nonzero vectors of GF(q)^m.

    A column is normalized when its first nonzero entry is 1; columns are
    listed in lexicographic order (first row most significant).
    """
    q, m = params.q, params.m
    cols = [v for v in itertools.product(range(q), repeat=m)
            if any(v) and next(x for x in v if x) == 1]
    assert len(cols) == params.n
    return np.array(cols, dtype=np.int64).T


def hamming_code(params: HammingCodeParams, field: FieldTable | None = None) -> LotteryFrame:
    """The q-ary Hamming code: null space of the parity-check matrix."""
    field = field or gf(params.q)
    if field.q != params.q:
        raise ValueError("field order does not match q")
    q = params.q
    H = parity_check_matrix(params)
    size = check_space(q, params.n)
    syndrome = np.zeros((params.m, size), dtype=np.int8 if q < 128 else np.int64)
    rest = np.arange(size, dtype=np.int64)
    for j in range(params.n):
        digit = rest % q
        rest //= q
        for r in range(params.m):
            syndrome[r] = field.add[syndrome[r], field.mul[digit, H[r, j]]]
    members = np.flatnonzero(~syndrome.any(axis=0))
    frame = LotteryFrame(params.q, params.n, tuple(members.tolist()))
    assert len(frame) == params.code_size
    return frame


def optimal_length3_size(q: int) -> int:
    """Optimal size of a length-3 radius-1 q-ary covering code."""
    return (q * q + 1) // 2


def radius1_length3_code(q: int, seed: int = 0, budget: int = 200_000) -> LotteryFrame:
    """Covering code of length 3, radius 1 and size floor((q^2+1)/2).

    Found by randomized greedy seeding plus local repair at the target size,
    then checked by an exhaustive radius computation.
    """
    from .search import local_search_cover

    if q < 2:
        raise ValueError("q must be >= 2")
    check_space(q, 3)
    target = optimal_length3_size(q)
    code = local_search_cover(q, 3, 1, target, seed=seed, budget=budget)
    if code is None:
        raise RuntimeError(f"no radius-1 code of size {target} found for q={q} within {budget} moves")
    frame = LotteryFrame.from_indices(q, 3, code)
    if len(frame) != target or covering_radius(frame) > 1:
        raise RuntimeError("local search returned an invalid code")
    return frame

