from fractions import Fraction

import pytest

from nearmiss.bounds import seller_value_upper_bound, sphere_covering_bound
from nearmiss.index import covering_radius, is_perfect_radius1, near_miss_index, seller_value
from nearmiss.search import minimal_covering_code
from nearmiss.seller import design_optimal, design_schedule, hamming_value, minimal_length_check
from nearmiss.space import BudgetExceeded, set_max_space

from conftest import naive_index, random_frame


@pytest.mark.parametrize("q,m,n,value", [
    (2, 1, 1, Fraction(0)),
    (2, 2, 3, Fraction(1, 2)),
    (2, 3, 7, Fraction(3, 4)),
    (3, 2, 4, Fraction(2, 3)),
    (4, 2, 5, Fraction(4, 5) * Fraction(15, 16)),
])
def test_design_values(q, m, n, value):
    d = design_optimal(q, m)
    assert d.params.n == n
    assert d.value == value == hamming_value(q, m)
    assert d.optimal and d.verified
    assert d.p == Fraction(1, q**m)
    assert d.frame.win_probability == d.p
    assert naive_index(d.frame) - d.p == value


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2)])
def test_design_frame_is_perfect(q, m):
    d = design_optimal(q, m)
    assert is_perfect_radius1(d.frame)
    assert covering_radius(d.frame) == 1
    assert len(d.frame) == sphere_covering_bound(q, d.params.n, 1)
    assert seller_value(d.frame) == d.value == d.bound


def test_design_rejects_unsupported_field():
    with pytest.raises(ValueError, match="prime power"):
        design_optimal(6, 2)


def test_seller_bound_on_500_random_frames(rng):
    for _ in range(500):
        q = rng.choice([2, 3])
        n = rng.randint(1, 8 if q == 2 else 6)
        f = random_frame(rng, q, n, max_w=min(q**n, 20))
        rep = near_miss_index(f)
        bound = seller_value_upper_bound(n, rep.p)
        assert rep.seller_value <= bound
        if n == 1:
            assert rep.seller_value <= 0


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1)])
def test_minimal_length(q, m):
    assert minimal_length_check(q, m) is True


def test_minimal_length_budget():
    with pytest.raises(BudgetExceeded, match="budget"):
        minimal_length_check(2, 3, budget=10)


def test_schedule_small():
    designs = design_schedule(2, 3)
    assert [d.value for d in designs] == [0, Fraction(1, 2), Fraction(3, 4)]
    assert [d.params.n for d in designs] == [1, 3, 7]
    assert all(d.verified and d.optimal for d in designs)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_schedule_monotone(q):
    designs = design_schedule(q, 5)
    values = [d.value for d in designs]
    ps = [d.p for d in designs]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(a > b for a, b in zip(ps, ps[1:]))
    assert all(d.value == d.bound for d in designs)
    assert all(v < 1 for v in values)


def test_schedule_marks_analytic_designs():
    set_max_space(2**10)
    try:
        designs = design_schedule(2, 5)
    finally:
        set_max_space(None)
    assert [d.verified for d in designs] == [True, True, True, False, False]
    assert designs[3].frame is None
    assert designs[4].value == Fraction(30, 31) * Fraction(31, 32)


@pytest.mark.parametrize("n", [3, 7])
def test_shorter_codes_cost_more(n):
    """K(n,1) < q^k K(n-k,1) for every 1 <= k < n at Hamming lengths."""
    K_n = sphere_covering_bound(2, n, 1)  # perfect, so the bound is exact
    for k in range(1, n):
        short = n - k
        if 2**short <= 32:
            K_short = minimal_covering_code(2, short, 1).size
        else:
            K_short = sphere_covering_bound(2, short, 1)  # a lower bound suffices here
        assert K_n < 2**k * K_short
