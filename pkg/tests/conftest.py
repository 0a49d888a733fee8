import itertools
import random

import pytest
from hypothesis import settings, strategies as st

from strongsub.digraph import Digraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def digraphs(draw, min_n=2, max_n=5, max_arcs=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_arcs or len(pairs)))
    return Digraph.from_arc_list(n, chosen)


@st.composite
def digraph_with_set(draw, min_n=2, max_n=5, max_arcs=None, k=None):
    d = draw(digraphs(min_n=max(min_n, k or 2), max_n=max_n, max_arcs=max_arcs))
    size = k or draw(st.integers(2, d.n))
    S = tuple(sorted(draw(st.sets(st.integers(0, d.n - 1), min_size=size, max_size=size))))
    return d, S


def all_digraphs(n):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield Digraph.from_arc_list(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def seeded_digraphs(seed, count, orders, max_arcs):
    """Random digraphs with a capped arc count, so the brute-force oracle stays fast."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.choice(orders)
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        m = rng.randint(n, min(max_arcs, len(pairs)))
        out.append(Digraph.from_arc_list(n, rng.sample(pairs, m)))
    return out


def subsets(n, min_size=2):
    for size in range(min_size, n + 1):
        yield from itertools.combinations(range(n), size)


@pytest.fixture
def k4_minus_triangle():
    from strongsub.generators import complete_minus_3cycle

    return complete_minus_3cycle(4)


# Acceptance criteria report: tests marked ``criterion(number, title)`` get one
# PASS/FAIL line each in the terminal summary.
_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when == "teardown":
        return
    number, title = marker.args
    if report.when == "setup" and report.passed:
        return
    _criteria[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {title}")
