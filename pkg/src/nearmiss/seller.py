"""The seller's framing problem: maximize index minus win probability."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import seller_value_upper_bound
from .constructions import HammingCodeParams, hamming_code
from .index import is_perfect_radius1, near_miss_index
from .search import optimal_frame
from .space import LotteryFrame, SpaceTooLarge, max_space


@dataclass(frozen=True)
class SellerDesign:
    params: HammingCodeParams
    frame: LotteryFrame | None  # None when the space is too large to build
    value: Fraction
    bound: Fraction
    verified: bool

    @property
    def optimal(self) -> bool:
        return self.value == self.bound

    @property
    def p(self) -> Fraction:
        return Fraction(1, self.params.q**self.params.m)


def hamming_value(q: int, m: int) -> Fraction:
    """Closed-form seller value of the q-ary Hamming frame with m check symbols."""
    n = (q**m - 1) // (q - 1)
    return Fraction(n - 1, n) * Fraction(q**m - 1, q**m)


def design_optimal(q: int, m: int) -> SellerDesign:
    """Build the Hamming frame and confirm it meets the seller-value bound."""
    params = HammingCodeParams(q, m)
    frame = hamming_code(params)
    report = near_miss_index(frame)
    p = report.p
    bound = seller_value_upper_bound(params.n, p)
    expected = hamming_value(q, m)
    if not is_perfect_radius1(frame):
        raise AssertionError(f"Hamming frame q={q}, m={m} is not perfect")
    if p != Fraction(1, q**m) or report.seller_value != expected or report.seller_value != bound:
        raise AssertionError(
            f"Hamming frame q={q}, m={m}: value {report.seller_value} vs closed form {expected}, bound {bound}"
        )
    return SellerDesign(params, frame, report.seller_value, bound, verified=True)


def minimal_length_check(q: int, m: int, budget: int | None = None) -> bool:
    """True iff no length shorter than (q^m-1)/(q-1) reaches the bound at p = q^-m.

    Every shorter length is checked by exhaustive search for the best frame
    with q^(n'-m) winners; lengths below m cannot realize p at all.
    """
    params = HammingCodeParams(q, m)
    if not design_optimal(q, m).optimal:
        return False
    p = Fraction(1, q**m)
    for short in range(m, params.n):
        kwargs = {} if budget is None else {"budget": budget}
        _, index = optimal_frame(q, short, q ** (short - m), **kwargs)
        if index - p >= seller_value_upper_bound(short, p):
            return False
    return True


def design_schedule(q: int, m_max: int) -> list[SellerDesign]:
    """Hamming designs for m = 1..m_max; large ones are reported analytically."""
    out = []
    for m in range(1, m_max + 1):
        params = HammingCodeParams(q, m)
        if q**params.n <= max_space():
            try:
                out.append(design_optimal(q, m))
                continue
            except SpaceTooLarge:
                pass
        value = hamming_value(q, m)
        bound = seller_value_upper_bound(params.n, Fraction(1, q**m))
        out.append(SellerDesign(params, None, value, bound, verified=False))
    values = [d.value for d in out]
    assert all(a < b for a, b in zip(values, values[1:]))
    return out

