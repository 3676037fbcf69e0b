"""Closed-form bounds on the near-miss index, code sizes and seller value."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

# (q, n) rows of the commonly quoted M-bound table
REFERENCE_GRID = [(q, n) for q in (2, 5, 8, 11, 14) for n in (2, 10)]


@dataclass(frozen=True)
class MBoundRow:
    q: int
    n: int
    threshold_p: Fraction
    M: Fraction


def threshold_probability(q: int) -> Fraction:
    return Fraction(q * q + 1, 2 * q**3)


def m_bound(q: int, n: int) -> MBoundRow:
    """Ratio NM/p reachable at the threshold probability (q^2+1)/(2q^3)."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    M = Fraction(2 * q**3 * (n - 1) + q * q + 1, n * (q * q + 1))
    return MBoundRow(q, n, threshold_probability(q), M)


def ratio_bounds(q: int, n: int, p: Fraction) -> tuple[Fraction, Fraction]:
    """(lower, upper) bounds on the best achievable NM/p at win probability p.

    Below the threshold the range is [M, q^(n-1)]; above it, [1, M].
    """
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError(f"win probability must lie in (0, 1], got {p}")
    if (p * q**n).denominator != 1:
        raise ValueError(f"p = {p} is not realizable with {q}^{n} outcomes")
    row = m_bound(q, n)
    if p <= row.threshold_p:
        return row.M, Fraction(q ** (n - 1))
    return Fraction(1), row.M


def ball_volume(q: int, n: int, R: int) -> int:
    return sum(comb(n, i) * (q - 1) ** i for i in range(min(R, n) + 1))


def sphere_covering_bound(q: int, n: int, R: int) -> int:
    """Lower bound ceil(q^n / |ball of radius R|) on the size of an R-covering code."""
    if not 0 <= R <= n:
        raise ValueError(f"need 0 <= R <= n, got R={R}, n={n}")
    return -(-(q**n) // ball_volume(q, n, R))


def seller_value_upper_bound(n: int, p_star: Fraction) -> Fraction:
    p_star = Fraction(p_star)
    if n < 1 or not 0 < p_star <= 1:
        raise ValueError("need n >= 1 and 0 < p* <= 1")
    return Fraction(n - 1, n) * (1 - p_star)


def single_winner_mean_distance(q: int, n: int) -> Fraction:
    """Average distance to a lone winner, summed the long way over shells."""
    total = sum(comb(n, k) * k * (q - 1) ** k for k in range(1, n + 1))
    return Fraction(total, q**n)


def single_winner_index(q: int, n: int) -> Fraction:
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    return 1 - single_winner_mean_distance(q, n) / n


def round_half_away(x: Fraction, places: int) -> str:
    """Decimal string of x rounded half away from zero."""
    x = Fraction(x)
    scale = 10**places
    sign = "-" if x < 0 else ""
    scaled = abs(x) * scale
    whole = int(scaled)
    if scaled - whole >= Fraction(1, 2):
        whole += 1
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole // scale}.{whole % scale:0{places}d}"


def reference_table() -> list[MBoundRow]:
    return [m_bound(q, n) for q, n in REFERENCE_GRID]
