import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nearmiss.index import min_distances
from nearmiss.space import (
    LotteryFrame,
    SpaceTooLarge,
    decode,
    distance_matrix,
    encode,
    hamming_distance,
    index_distance,
    max_space,
    neighbors,
    set_max_space,
)

from conftest import frames


def test_distance_examples():
    seven, bar = 0, 1
    assert hamming_distance((seven, seven, seven), (bar, bar, seven)) == 2
    assert hamming_distance((3, 1, 4), (3, 1, 4)) == 0
    assert hamming_distance((0, 1), (1, 0)) == 2


def test_distance_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        hamming_distance((0, 1), (0, 1, 1))


@pytest.mark.parametrize("digits,q,expected", [
    ((0, 0, 0), 2, 0),
    ((1, 1, 1), 2, 7),
    ((2, 0, 1), 3, 11),
])
def test_encode(digits, q, expected):
    assert encode(digits, q) == expected
    assert decode(expected, q, len(digits)) == digits


def test_encode_rejects_bad_digit():
    with pytest.raises(ValueError, match="digit out of range"):
        encode((0, 2), 2)


@given(st.integers(2, 7), st.integers(1, 6), st.data())
def test_decode_encode_roundtrip(q, n, data):
    x = tuple(data.draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n)))
    assert decode(encode(x, q), q, n) == x


def test_neighbors_examples():
    assert sorted(neighbors(0, 2, 3)) == [1, 2, 4]
    assert sorted(neighbors(0, 3, 1)) == [1, 2]
    assert len(list(neighbors(17, 5, 4))) == 16


@given(st.integers(2, 6), st.integers(1, 5), st.data())
def test_neighbors_are_distinct_and_adjacent(q, n, data):
    i = data.draw(st.integers(0, q**n - 1))
    nb = list(neighbors(i, q, n))
    assert len(nb) == len(set(nb)) == n * (q - 1)
    assert all(index_distance(i, j, q, n) == 1 for j in nb)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 2), (2, 6)])
def test_metric_axioms_exhaustive(q, n):
    D = distance_matrix(q, n).astype(int)
    assert ((D == 0) == np.eye(q**n, dtype=bool)).all()
    assert (D == D.T).all()
    # d(x,z) <= d(x,y) + d(y,z) for every triple
    assert (D[:, None, :] <= D[:, :, None] + D[None, :, :]).all()


@given(st.integers(2, 5), st.integers(1, 8), st.data())
def test_metric_axioms_random(q, n, data):
    vec = st.lists(st.integers(0, q - 1), min_size=n, max_size=n)
    x, y, z = (data.draw(vec) for _ in range(3))
    assert hamming_distance(x, x) == 0
    assert hamming_distance(x, y) == hamming_distance(y, x)
    assert hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z)


def _relabel(frame, perms):
    out = []
    for w in frame.digits():
        out.append(tuple(perms[j][d] for j, d in enumerate(w)))
    return LotteryFrame.from_digits(frame.q, frame.n, out)


@settings(max_examples=60)
@given(frames(max_space=729), st.randoms(use_true_random=False))
def test_symbol_relabeling_preserves_min_distances(frame, rnd):
    q, n = frame.q, frame.n
    perms = []
    for _ in range(n):
        p = list(range(q))
        rnd.shuffle(p)
        perms.append(p)
    before = min_distances(frame)
    after = min_distances(_relabel(frame, perms))
    for i, x in enumerate(itertools.product(range(q), repeat=n)):
        x = x[::-1]
        y = tuple(perms[j][d] for j, d in enumerate(x))
        assert after[encode(y, q)] == before[encode(x, q)]


def test_frame_canonical_form():
    f = LotteryFrame.from_indices(2, 3, [7, 0, 7])
    assert f.winning == (0, 7)
    assert f.win_probability == Fraction(1, 4)
    with pytest.raises(ValueError, match="strictly increasing"):
        LotteryFrame(2, 3, (7, 0))
    with pytest.raises(ValueError, match="nonempty"):
        LotteryFrame(2, 3, ())
    with pytest.raises(ValueError, match="out of range"):
        LotteryFrame(2, 3, (8,))
    with pytest.raises(ValueError, match="n mismatch"):
        LotteryFrame.from_digits(2, 3, [(0, 1)])


def test_enumeration_cap(monkeypatch):
    assert max_space() == 2**27
    monkeypatch.setenv("NML_MAX_SPACE", "100")
    assert max_space() == 100
    with pytest.raises(SpaceTooLarge, match="cap"):
        min_distances(LotteryFrame(2, 7, (0,)))
    set_max_space(1000)
    try:
        assert max_space() == 1000
    finally:
        set_max_space(None)
