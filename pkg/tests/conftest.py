from itertools import combinations, product

import pytest
from hypothesis import strategies as st

from bsposets.poset import BSBounds, grid, leq


@st.composite
def small_bounds(draw, max_length=3, lo=-3, hi=6):
    """Random valid bounds with a handful of elements."""
    n = draw(st.integers(1, max_length))
    lower = sorted(draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n, unique=True)))
    upper = []
    for i, x in enumerate(lower):
        floor = max(x, upper[-1] + 1 if upper else x)
        upper.append(floor + draw(st.integers(0, 2)))
    return BSBounds(tuple(lower), tuple(upper))


def box_members(b: BSBounds):
    """Oracle: filter the whole bounding box for strictly increasing tuples."""
    box = product(*(range(x, y + 1) for x, y in zip(b.lower, b.upper)))
    return sorted(d for d in box if all(u < v for u, v in zip(d, d[1:])))


def brute_chains(elements):
    """Oracle: every nonempty totally ordered subset (exponential)."""
    out = []
    for r in range(1, len(elements) + 1):
        for s in combinations(elements, r):
            if all(leq(a, b) or leq(b, a) for a, b in combinations(s, 2)):
                out.append(frozenset(s))
    return out


@pytest.fixture(scope="session")
def grid_bounds():
    return grid()


@pytest.fixture(scope="session")
def small_grid(grid_bounds):
    from bsposets.poset import count_elements
    return [b for b in grid_bounds if count_elements(b) <= 12]


from hypothesis import settings as _settings

_settings.register_profile("default", deadline=None, max_examples=60)
_settings.load_profile("default")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok, elapsed, limit = RESULTS[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  "
            f"({elapsed:.4g}s, limit {limit:g}s)")
