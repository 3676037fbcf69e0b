"""Exact and heuristic searches over winning sets.

* minimal covering codes: branch-and-bound on the set-cover formulation, or
  greedy seeding followed by swap-based local search;
* the best near-miss frame for a fixed number of winners;
* the curve of minimal distance sums, used to check convexity;
* the greedy incremental path of winning sets.

Every search fixes the all-zero outcome as a winner/codeword.  That loses no
generality: translating every outcome by a fixed vector (per-coordinate
symbol permutation) preserves all distances and maps any winner to zero.
"""

from __future__ import annotations

import itertools
import random
from math import factorial
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .bounds import sphere_covering_bound
from .index import covering_radius, near_miss_index
from .space import (
    BudgetExceeded,
    LotteryFrame,
    SpaceTooLarge,
    check_space,
    digit_matrix,
    distance_matrix,
)

EXACT_MAX_SPACE = 64
DEFAULT_EXACT_BUDGET = 5_000_000
DEFAULT_HEURISTIC_BUDGET = 20_000
DEFAULT_FRAME_BUDGET = 2_000_000


def ball_members(q: int, n: int, R: int) -> np.ndarray:
    """(q**n, V) array; row x lists every outcome within distance R of x, x first."""
    size = check_space(q, n)
    R = min(R, n)
    idx = np.arange(size, dtype=np.int64)
    weights = [q**j for j in range(n)]
    digits = [(idx // w) % q for w in weights]
    cols = [idx]
    for r in range(1, R + 1):
        for coords in itertools.combinations(range(n), r):
            for shifts in itertools.product(range(1, q), repeat=r):
                out = idx.copy()
                for j, s in zip(coords, shifts):
                    out += (((digits[j] + s) % q) - digits[j]) * weights[j]
                cols.append(out)
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class SearchCertificate:
    kind: str  # "exact-minimal" or "upper-bound-witness"
    frame: LotteryFrame
    target_R: int
    nodes_explored: int
    seed: int | None = None
    verified_radius: int | None = None
    target_size: int | None = None

    @property
    def size(self) -> int:
        return len(self.frame)

    @property
    def met_target(self) -> bool | None:
        if self.target_size is None:
            return None
        return self.size <= self.target_size


def _certify(cert: SearchCertificate) -> SearchCertificate:
    radius = covering_radius(cert.frame)
    if radius > cert.target_R:
        raise AssertionError(f"search returned a code of radius {radius} > {cert.target_R}")
    return replace(cert, verified_radius=radius)


# ---------------------------------------------------------------------------
# exact set cover


class _ExactCover:
    def __init__(self, q: int, n: int, R: int, budget: int):
        self.size = q**n
        self.full = (1 << self.size) - 1
        self.balls = [sum(1 << int(y) for y in row) for row in ball_members(q, n, R)]
        self.budget = budget
        self.nodes = 0

    def solve(self, k: int) -> list[int] | None:
        """A cover of size <= k containing outcome 0, or None if none exists."""
        return self._dfs([0], self.balls[0], 0, k)

    def _dfs(self, chosen: list[int], covered: int, excluded: int, k: int) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"exact covering search exceeded its budget of {self.budget} nodes")
        if covered == self.full:
            return chosen
        left = k - len(chosen)
        if left <= 0:
            return None
        uncovered = self.full & ~covered
        n_unc = uncovered.bit_count()
        allowed = [c for c in range(self.size) if not (excluded >> c) & 1]
        best_gain = max((self.balls[c] & uncovered).bit_count() for c in allowed) if allowed else 0
        # cheaper ceil(uncovered / V) is implied: best_gain <= V
        if best_gain == 0 or -(-n_unc // best_gain) > left:
            return None
        # uncovered outcome with the fewest admissible centres; balls are symmetric
        pick, options = None, None
        rest = uncovered
        while rest:
            low = rest & -rest
            e = low.bit_length() - 1
            rest ^= low
            cands = self.balls[e] & ~excluded
            if pick is None or cands.bit_count() < options.bit_count():
                pick, options = e, cands
                if cands.bit_count() <= 1:
                    break
        if not options:
            return None
        centres = []
        while options:
            low = options & -options
            centres.append(low.bit_length() - 1)
            options ^= low
        centres.sort(key=lambda c: (-(self.balls[c] & uncovered).bit_count(), c))
        for c in centres:
            found = self._dfs(chosen + [c], covered | self.balls[c], excluded, k)
            if found is not None:
                return found
            # any cover through c has been ruled out in this subtree
            excluded |= 1 << c
        return None


def greedy_cover(q: int, n: int, R: int, rng: random.Random | None = None) -> list[int]:
    """Max-coverage greedy; ties go to the smallest index unless ``rng`` is given."""
    balls = ball_members(q, n, R)
    count = np.zeros(balls.shape[0], dtype=np.int64)
    code: list[int] = []
    while not count.all():
        gain = (count[balls] == 0).sum(axis=1)
        if rng is None:
            c = int(np.argmax(gain))
        else:
            top = np.flatnonzero(gain == gain.max())
            c = int(top[rng.randrange(top.size)])
        code.append(c)
        count[balls[c]] += 1
    return code


def _local_search(balls: np.ndarray, size: int, rng: random.Random, budget: int,
                  start: list[int] | None = None, noise: float = 0.1, tenure: int = 5,
                  restart_after: int = 2000) -> tuple[list[int] | None, int]:
    """Look for ``size`` centres covering everything; returns (code or None, moves used)."""
    N = balls.shape[0]
    moves = 0

    def fresh_start() -> list[int]:
        code: list[int] = []
        count = np.zeros(N, dtype=np.int64)
        while len(code) < size:
            gain = (count[balls] == 0).sum(axis=1)
            gain[code] = -1
            top = np.flatnonzero(gain == gain.max())
            c = int(top[rng.randrange(top.size)])
            code.append(c)
            count[balls[c]] += 1
        return code

    code = list(dict.fromkeys(start))[:size] if start is not None else fresh_start()
    while len(code) < size:
        c = rng.randrange(N)
        if c not in code:
            code.append(c)
    while True:
        count = np.zeros(N, dtype=np.int64)
        np.add.at(count, balls[code].ravel(), 1)
        in_code = np.zeros(N, dtype=bool)
        in_code[code] = True
        tabu: dict[int, int] = {}
        best_unc = int((count == 0).sum())
        stale = 0
        while moves < budget:
            uncovered = np.flatnonzero(count == 0)
            if uncovered.size == 0:
                return sorted(code), moves
            moves += 1
            u = int(uncovered[rng.randrange(uncovered.size)])
            cands = [int(c) for c in balls[u] if not in_code[c]]
            if rng.random() < noise:
                c_add = cands[rng.randrange(len(cands))]
                w_del = code[rng.randrange(len(code))]
            else:
                members = balls[code]
                single = count[members] == 1
                best, choices = None, []
                for c in cands:
                    if tabu.get(c, -1) > moves:
                        continue
                    gain = int((count[balls[c]] == 0).sum())
                    inside = np.zeros(N, dtype=bool)
                    inside[balls[c]] = True
                    loss = (single & ~inside[members]).sum(axis=1)
                    for i, w in enumerate(code):
                        if tabu.get(w, -1) > moves:
                            continue
                        delta = gain - int(loss[i])
                        if best is None or delta > best:
                            best, choices = delta, [(c, w)]
                        elif delta == best:
                            choices.append((c, w))
                if not choices:
                    c_add = cands[rng.randrange(len(cands))]
                    w_del = code[rng.randrange(len(code))]
                else:
                    c_add, w_del = choices[rng.randrange(len(choices))]
            code[code.index(w_del)] = c_add
            in_code[w_del] = False
            in_code[c_add] = True
            count[balls[w_del]] -= 1
            count[balls[c_add]] += 1
            tabu[w_del] = moves + tenure
            tabu[c_add] = moves + tenure
            unc = int((count == 0).sum())
            if unc < best_unc:
                best_unc, stale = unc, 0
            else:
                stale += 1
            if stale >= restart_after:
                break
        if moves >= budget:
            return None, moves
        code = fresh_start()


def local_search_cover(q: int, n: int, R: int, size: int, seed: int = 0,
                       budget: int = DEFAULT_HEURISTIC_BUDGET) -> list[int] | None:
    """Randomized greedy start plus swap repair at a fixed code size."""
    code, _ = _local_search(ball_members(q, n, R), size, random.Random(seed), budget)
    return code


def minimal_covering_code(q: int, n: int, R: int, mode: str = "exact", budget: int | None = None,
                          seed: int = 0, target_size: int | None = None,
                          exact_max_space: int = EXACT_MAX_SPACE) -> SearchCertificate:
    """Smallest R-covering code of Q^n (exact) or a good witness (heuristic)."""
    if q < 2 or n < 1 or R < 0:
        raise ValueError("need q >= 2, n >= 1, R >= 0")
    if mode == "exact":
        if q**n > exact_max_space:
            raise SpaceTooLarge(
                f"exact search needs q^n <= {exact_max_space}, got {q}^{n} = {q**n}"
            )
        solver = _ExactCover(q, n, R, budget or DEFAULT_EXACT_BUDGET)
        k = sphere_covering_bound(q, n, min(R, n))
        while True:
            code = solver.solve(k)
            if code is not None:
                break
            k += 1
        frame = LotteryFrame.from_indices(q, n, code)
        return _certify(SearchCertificate("exact-minimal", frame, R, solver.nodes,
                                          target_size=target_size))
    if mode == "heuristic":
        budget = budget or DEFAULT_HEURISTIC_BUDGET
        rng = random.Random(seed)
        balls = ball_members(q, n, R)
        best = greedy_cover(q, n, R)
        floor = max(sphere_covering_bound(q, n, min(R, n)), target_size or 0)
        used = 0
        while len(best) > floor and used < budget:
            # drop the codeword whose removal uncovers the fewest outcomes
            count = np.zeros(balls.shape[0], dtype=np.int64)
            np.add.at(count, balls[best].ravel(), 1)
            unique = [(int((count[balls[c]] == 1).sum()), c) for c in best]
            drop = min(unique)[1]
            start = [c for c in best if c != drop]
            found, spent = _local_search(balls, len(best) - 1, rng, budget - used, start=start)
            used += spent
            if found is None:
                break
            best = found
        frame = LotteryFrame.from_indices(q, n, best)
        return _certify(SearchCertificate("upper-bound-witness", frame, R, used, seed=seed,
                                          target_size=target_size))
    raise ValueError(f"unknown mode {mode!r}; expected 'exact' or 'heuristic'")


# ---------------------------------------------------------------------------
# best frames for a fixed number of winners


GROUP_LIMIT = 100_000


def automorphisms(q: int, n: int, limit: int = GROUP_LIMIT) -> np.ndarray | None:
    """Outcome permutations induced by Hamming-space symmetries, one per row.

    Uses every coordinate permutation combined with every per-coordinate symbol
    permutation when that group has at most ``limit`` elements, otherwise the
    subgroup with cyclic symbol shifts only; None if even that is too big.
    """
    digits = digit_matrix(q, n).astype(np.int64)
    N = digits.shape[0]
    n_coord = factorial(n)
    full = [np.array(p) for p in itertools.permutations(range(q))]
    shifts = [(np.arange(q) + s) % q for s in range(q)]
    for choices in (full, shifts):
        if n_coord * len(choices) ** n <= limit:
            break
    else:
        return None
    blocks = []
    for sigma in itertools.permutations(range(n)):
        acc = np.zeros((1, N), dtype=np.int64)
        for j in range(n):
            contrib = np.stack([c[digits[:, j]] for c in choices]) * q ** sigma[j]
            acc = (acc[:, None, :] + contrib[None, :, :]).reshape(-1, N)
        blocks.append(acc)
    return np.concatenate(blocks).astype(np.int32)


def _is_lex_min(prefix: list[int], group: np.ndarray) -> bool:
    """No symmetry maps the sorted prefix to a lexicographically smaller set."""
    images = np.sort(group[:, prefix], axis=1)
    diff = images - np.asarray(prefix)
    nz = diff != 0
    first = nz.argmax(axis=1)
    smaller = nz.any(axis=1) & (diff[np.arange(diff.shape[0]), first] < 0)
    return not smaller.any()


def _min_sum_search(D: np.ndarray, m: int, budget: int,
                    group: np.ndarray | None = None) -> tuple[list[int], int, int]:
    """Lexicographically first m-subset with the least distance sum.

    Pruning relies on submodularity of the distance reduction: the r winners
    still to be added can reduce the current sum by at most the r largest
    single-point reductions available now.  With ``group`` given, prefixes
    that are not lexicographically least in their orbit are cut; every
    extension of such a prefix is non-minimal too, and the lexicographically
    first optimal set is always minimal in its orbit.
    """
    N = D.shape[0]
    Di = D.astype(np.int64)
    start = Di[0].copy()
    # greedy completion gives the initial incumbent
    g = start.copy()
    for _ in range(m - 1):
        gains = np.maximum(g[None, :] - Di, 0).sum(axis=1)
        g = np.minimum(g, Di[int(np.argmax(gains))])
    best_sum = int(g.sum()) + 1
    best_set: list[int] = []
    nodes = 0

    def dfs(last: int, cur: np.ndarray, chosen: list[int]) -> None:
        nonlocal best_sum, best_set, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"frame search exceeded its budget of {budget} nodes")
        if group is not None and len(chosen) > 1 and not _is_lex_min(chosen, group):
            return
        s = int(cur.sum())
        r = m - len(chosen)
        if r == 0:
            if s < best_sum:
                best_sum, best_set = s, list(chosen)
            return
        hi = N - r + 1
        if last + 1 >= hi:
            return
        gains = np.maximum(cur[None, :] - Di[last + 1:], 0).sum(axis=1)
        top = np.sort(gains)[::-1]
        if s - int(top[:r].sum()) >= best_sum:
            return
        # bound for a child j: its own gain plus the r-1 best gains beyond it
        rest = top[: r - 1].sum() if r > 1 else 0
        for offset, j in enumerate(range(last + 1, hi)):
            if s - int(gains[offset]) - int(rest) >= best_sum:
                continue
            dfs(j, np.minimum(cur, Di[j]), chosen + [j])

    dfs(0, start, [0])
    return best_set, best_sum, nodes


def optimal_frame(q: int, n: int, w_size: int,
                  budget: int = DEFAULT_FRAME_BUDGET) -> tuple[LotteryFrame, Fraction]:
    """A winning set of size ``w_size`` maximizing the near-miss index."""
    size = check_space(q, n)
    if not 1 <= w_size <= size:
        raise ValueError(f"w_size must lie in [1, {size}], got {w_size}")
    winners, _, _ = _min_sum_search(distance_matrix(q, n), w_size, budget, automorphisms(q, n))
    frame = LotteryFrame(q, n, tuple(winners))
    return frame, near_miss_index(frame).index


def _exhaustive_curve(D: np.ndarray) -> list[int]:
    N = D.shape[0]
    sentinel = np.uint8(255)
    mins = np.empty((1 << N, N), dtype=np.uint8)
    mins[0] = sentinel
    for b in range(N):
        lo = 1 << b
        mins[lo:2 * lo] = np.minimum(mins[:lo], D[b])
    sums = mins[1:].astype(np.int64).sum(axis=1)
    pop = np.array([bin(x).count("1") for x in range(1, 1 << N)])
    curve = np.full(N + 1, np.iinfo(np.int64).max)
    np.minimum.at(curve, pop, sums)
    return [int(v) for v in curve[1:]]


def min_distance_sum_curve(q: int, n: int, budget: int = DEFAULT_FRAME_BUDGET) -> list[int]:
    """Entry m-1 is the least sum over x of min_{w in W} d(x, w) with |W| = m.

    Spaces of at most 16 outcomes are enumerated over every subset; up to 64
    outcomes use the symmetry-reduced branch-and-bound.
    """
    size = q**n
    if size > EXACT_MAX_SPACE:
        raise SpaceTooLarge(f"distance-sum curve needs q^n <= {EXACT_MAX_SPACE}, got {size}")
    D = distance_matrix(q, n)
    if size <= 16:
        return _exhaustive_curve(D)
    group = automorphisms(q, n)
    return [_min_sum_search(D, m, budget, group)[1] for m in range(1, size + 1)]


def greedy_frame_path(q: int, n: int) -> list[tuple[LotteryFrame, Fraction]]:
    """Grow W one winner at a time, always taking the largest distance-sum reduction."""
    D = distance_matrix(q, n).astype(np.int64)
    N = D.shape[0]
    winners = [0]
    cur = D[0].copy()
    path = [(LotteryFrame(q, n, (0,)), near_miss_index(LotteryFrame(q, n, (0,))).index)]
    denom = n * N
    member = np.zeros(N, dtype=bool)
    member[0] = True
    while len(winners) < N:
        gains = np.maximum(cur[None, :] - D, 0).sum(axis=1)
        gains[member] = -1
        j = int(np.argmax(gains))
        winners.append(j)
        member[j] = True
        cur = np.minimum(cur, D[j])
        frame = LotteryFrame.from_indices(q, n, winners)
        path.append((frame, 1 - Fraction(int(cur.sum()), denom)))
    return path
