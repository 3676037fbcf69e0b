import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nearmiss.space import LotteryFrame


def naive_min_distances(frame):
    """Direct O(q^n * |W| * n) minimum distance per outcome; independent of the BFS."""
    words = [frame_digits(w, frame.q, frame.n) for w in frame.winning]
    out = []
    for x in itertools.product(range(frame.q), repeat=frame.n):
        x = x[::-1]  # product varies the last slot fastest; first coordinate is the low digit
        out.append(min(sum(a != b for a, b in zip(x, w)) for w in words))
    return out


def frame_digits(i, q, n):
    ds = []
    for _ in range(n):
        i, d = divmod(i, q)
        ds.append(d)
    return tuple(ds)


def naive_index(frame):
    dist = naive_min_distances(frame)
    return 1 - Fraction(sum(dist), frame.n * len(dist))


def random_frame(rng, q, n, max_w=None):
    size = q**n
    k = rng.randint(1, max_w or size)
    return LotteryFrame.from_indices(q, n, rng.sample(range(size), min(k, size)))


@st.composite
def frames(draw, max_space=256, qs=(2, 3, 4, 5), max_n=6):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, max_n))
    while q**n > max_space:
        n -= 1
    size = q**n
    winners = draw(st.sets(st.integers(0, size - 1), min_size=1, max_size=min(size, 12)))
    return LotteryFrame.from_indices(q, n, winners)


@pytest.fixture
def example1a():
    return LotteryFrame.from_digits(2, 3, [(0, 0, 0), (1, 1, 1)])


@pytest.fixture
def example1b():
    # (7,7,7) and (B,B,7) with 7 -> 0, B -> 1
    return LotteryFrame.from_digits(2, 3, [(0, 0, 0), (1, 1, 0)])


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a numbered acceptance criterion as PASS or FAIL for the summary."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    yield
    report = getattr(request.node, "rep_call", None)
    ok = report is not None and report.passed
    ACCEPTANCE[number] = (title, "PASS" if ok else "FAIL")
    print(f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): numbered acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
