"""Exit criteria, one test per criterion, each under its stated time limit.

A summary line per criterion is printed at the end of the session.
"""
import time
from itertools import combinations

import pytest

from bsposets.analysis import (bs_membership_search, count_report, deleted_poset,
                               dual_bounds, facet_count_formula,
                               is_self_dual_arith, shear, vertex_count_formula)
from bsposets.complex import bs_order_complex, f_vector, order_complex
from bsposets.decomp import (check_certificate, is_shelling,
                             is_vertex_decomposable, lex_atom_ordering,
                             shedding_vertices, shelling_from_tree, verify_rao)
from bsposets.poset import (BSBounds, HasseDiagram, consecutive_bounds,
                            count_elements, enumerate_elements, join,
                            maximal_chains, meet, poset_isomorphic)

RESULTS: dict[int, tuple[str, bool, float, float]] = {}


@pytest.fixture
def record(request):
    """Time the body and store a PASS/FAIL line for the criterion."""
    number, title, limit = request.node.get_closest_marker("criterion").args
    t0 = time.perf_counter()
    state = {"elapsed": None}

    def stop(measured=None):
        state["elapsed"] = time.perf_counter() - t0 if measured is None else measured
        return state["elapsed"]

    yield stop
    elapsed = state["elapsed"] if state["elapsed"] is not None else time.perf_counter() - t0
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    RESULTS[number] = (title, not failed, elapsed, limit)


def criterion(number, title, limit):
    return pytest.mark.criterion(number, title, limit)


@criterion(1, "Pi[(1,3),(3,4)] poset, covers and order complex", 1e-3)
def test_pair_example(record):
    b = BSBounds((1, 3), (3, 4))

    def build():
        h = HasseDiagram.from_bounds(b)
        return h, order_complex(h)

    build()
    best = min(_timed(build) for _ in range(5))
    h, delta = build()
    assert h.elements == ((1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert set(h.cover_pairs()) == {((1, 3), (1, 4)), ((1, 3), (2, 3)), ((1, 4), (2, 4)),
                                    ((2, 3), (2, 4)), ((2, 4), (3, 4))}
    assert len(h.edges) == 5
    assert delta.facets == {frozenset({"1,3", "1,4", "2,4", "3,4"}),
                            frozenset({"1,3", "2,3", "2,4", "3,4"})}
    assert record(best) < 1e-3


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


@criterion(2, "Pi[(1,3,4),(2,5,6)] shedding vertices", 5.0)
def test_triple_example(record):
    b = BSBounds((1, 3, 4), (2, 5, 6))
    assert len(enumerate_elements(b)) == 12
    got = shedding_vertices(bs_order_complex(b))
    assert got == {"1,3,6", "1,4,5", "1,5,6", "2,3,4", "2,3,6", "2,4,5"}
    assert record() < 5.0


@criterion(3, "vertex and facet counts of consecutive-form posets", 30.0)
def test_consecutive_counts(record):
    checked = 0
    for p in range(4):
        for k in range(1, 4):
            if vertex_count_formula(p, k) > 500:
                continue
            b = consecutive_bounds(p, k)
            assert len(enumerate_elements(b)) == vertex_count_formula(p, k)
            assert len(maximal_chains(b)) == facet_count_formula(p, k)
            checked += 1
    assert checked == 12
    spots = {(1, 2): 2, (2, 2): 5, (2, 3): 42, (3, 2): 14}
    for (p, k), n in spots.items():
        assert len(maximal_chains(consecutive_bounds(p, k))) == n == facet_count_formula(p, k)
    assert record() < 30.0


@criterion(4, "complete lattice on grid posets with <= 12 elements", 10.0)
def test_lattice(record, small_grid):
    for b in small_grid:
        h = HasseDiagram.from_bounds(b)
        n = len(h)
        ups, downs = h.upsets, h.downsets
        full = (1 << n) - 1
        els = h.elements
        for r in range(1, n + 1):
            for S in combinations(range(n), r):
                m = h.index.get(meet(els[i] for i in S))
                j = h.index.get(join(els[i] for i in S))
                assert m is not None and j is not None
                lower, upper = full, full
                for i in S:
                    lower &= downs[i]
                    upper &= ups[i]
                # meet is a lower bound above every lower bound; dually for join
                assert lower >> m & 1 and lower & ~downs[m] == 0
                assert upper >> j & 1 and upper & ~ups[j] == 0
    assert record() < 10.0


@criterion(5, "vertex-decomposability certificates and shellings on the grid", 60.0)
def test_vertex_decomposable(record, grid_bounds):
    for b in grid_bounds:
        delta = bs_order_complex(b)
        tree = is_vertex_decomposable(delta)
        assert tree is not None, b
        assert check_certificate(delta, tree), b
        order = shelling_from_tree(delta, tree)
        assert is_shelling(delta, order), b
        assert min(f_vector(delta).h) >= 0, b
    assert record() < 60.0


@criterion(6, "lexicographic recursive atom ordering on the grid", 60.0)
def test_rao(record, grid_bounds):
    for b in grid_bounds:
        assert verify_rao(HasseDiagram.from_bounds(b), lex_atom_ordering(b)), b
    assert record() < 60.0


@criterion(7, "duality, shearing and self-duality maps", 10.0)
def test_isomorphisms(record, grid_bounds):
    for b in grid_bounds:
        iso = dual_bounds(b)
        assert iso.reversing and iso.verify(), b
        if is_self_dual_arith(b):
            P = HasseDiagram.from_bounds(b)
            assert poset_isomorphic(P.reverse(), P) is not None, b
            assert iso.target == b.normalized()
    for p in range(1, 4):
        for k in range(1, p + 1):
            iso = shear(p, k)
            assert not iso.reversing and iso.verify(), (p, k)
    assert record() < 10.0


@criterion(8, "vertex and facet bounds, corrected form", 5.0)
def test_count_bounds(record, grid_bounds):
    for b in grid_bounds:
        assert count_report(b).within_bounds(), b
    r = count_report(BSBounds((0, 1), (2, 3)))
    assert r.vertex_count == 6 and r.printed_v_hi == 4 and r.printed_bound_fails()
    assert record() < 5.0


@criterion(9, "shedding-vertex deletions of Pi[(1,3,4),(2,5,6)] are not BS posets (window 8)", 120.0)
def test_deletion_nonmembership(record):
    b = BSBounds((1, 3, 4), (2, 5, 6))
    sheds = sorted(shedding_vertices(bs_order_complex(b)))
    assert len(sheds) == 6
    for label in sheds:
        v = tuple(int(x) for x in label.split(","))
        P = deleted_poset(b, v)
        assert P.is_bounded() and P.is_pure()
        assert bs_membership_search(P, 8) is None, v
    assert record() < 120.0


def test_grid_shape(grid_bounds):
    assert len(grid_bounds) == 798
    assert max(count_elements(b) for b in grid_bounds) <= 200
