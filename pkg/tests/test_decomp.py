from itertools import permutations

import pytest
from hypothesis import given, settings

from bsposets.complex import SimplicialComplex, bs_order_complex, f_vector
from bsposets.decomp import (SheddingTree, check_certificate, find_rao,
                             h_vector_from_shelling, is_shelling,
                             is_vertex_decomposable, lex_atom_ordering,
                             shedding_vertices, shelling_from_tree, verify_rao)
from bsposets.errors import ResourceError, ValidationError
from bsposets.poset import BSBounds, HasseDiagram, atoms

from conftest import small_bounds

PAIR = BSBounds((1, 3), (3, 4))
TRIPLE = BSBounds((1, 3, 4), (2, 5, 6))
SC = SimplicialComplex
DISJOINT_EDGES = SC([["a", "b"], ["c", "d"]])

# 0 < a < x < 1 and 0 < b < y < 1, nothing else
TWO_STRANDS = HasseDiagram.from_covers(
    [("0", "a"), ("a", "x"), ("x", "z"), ("0", "b"), ("b", "y"), ("y", "z")])


def brute_vd(delta: SimplicialComplex) -> bool:
    """Oracle straight from the definition, no memo and no bitmasks."""
    if len(delta.facets) <= 1:
        return True
    d = delta.dimension()
    for v in delta.vertices:
        lk, dl = delta.link([v]), delta.deletion([v])
        if dl.is_pure() and dl.dimension() == d and lk.dimension() == d - 1:
            if brute_vd(lk) and brute_vd(dl):
                return True
    return False


class TestVertexDecomposable:
    def test_simplex(self):
        t = is_vertex_decomposable(SC([["a", "b", "c"]]))
        assert t.is_leaf

    def test_disjoint_edges(self):
        assert is_vertex_decomposable(DISJOINT_EDGES) is None

    def test_pair_example(self):
        delta = bs_order_complex(PAIR)
        t = is_vertex_decomposable(delta)
        assert t.vertex == "1,4"
        assert t.link.is_leaf and t.link.complex == SC([["1,3", "2,4", "3,4"]])
        assert t.deletion.is_leaf and t.deletion.complex == SC([["1,3", "2,3", "2,4", "3,4"]])
        assert check_certificate(delta, t)

    def test_non_pure(self):
        with pytest.raises(ValidationError):
            is_vertex_decomposable(SC([["a", "b"], ["c"]]))

    def test_four_cycle(self):
        # 1-dimensional: vertex-decomposable iff connected, so the 4-cycle is
        cycle = SC([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])
        assert is_vertex_decomposable(cycle) is not None
        assert brute_vd(cycle)
        assert is_vertex_decomposable(DISJOINT_EDGES) is None and not brute_vd(DISJOINT_EDGES)

    def test_bipyramid_boundary(self):
        # boundary of a triangular bipyramid: a shellable 2-sphere
        delta = SC([["a", "b", "n"], ["b", "c", "n"], ["a", "c", "n"],
                    ["a", "b", "s"], ["b", "c", "s"], ["a", "c", "s"]])
        t = is_vertex_decomposable(delta)
        assert t is not None and check_certificate(delta, t)

    @settings(max_examples=25)
    @given(small_bounds(max_length=2))
    def test_agrees_with_brute_force(self, b):
        delta = bs_order_complex(b)
        if len(delta.facets) > 12:
            return
        assert (is_vertex_decomposable(delta) is not None) == brute_vd(delta)

    def test_json_roundtrip(self):
        delta = bs_order_complex(TRIPLE)
        t = is_vertex_decomposable(delta)
        back = SheddingTree.from_json(t.to_json(), delta)
        assert check_certificate(delta, back)
        assert back.to_json() == t.to_json()

    def test_tampered_certificate(self):
        delta = bs_order_complex(PAIR)
        bad = SheddingTree(delta, "1,3", SheddingTree(delta.link(["1,3"])),
                           SheddingTree(delta.deletion(["1,3"])))
        assert not check_certificate(delta, bad)
        with pytest.raises(ValidationError):
            shelling_from_tree(delta, bad)


class TestSheddingVertices:
    def test_triple_example(self):
        got = shedding_vertices(bs_order_complex(TRIPLE))
        assert got == {"1,3,6", "1,4,5", "1,5,6", "2,3,4", "2,3,6", "2,4,5"}

    def test_pair_example(self):
        assert shedding_vertices(bs_order_complex(PAIR)) == {"1,4", "2,3"}

    def test_simplex_has_none(self):
        # deleting a vertex of a simplex drops the dimension
        assert shedding_vertices(SC([["a", "b"]])) == set()

    def test_brute_force_triple_example(self):
        delta = bs_order_complex(TRIPLE)
        d = delta.dimension()
        want = set()
        for v in delta.vertices:
            lk, dl = delta.link([v]), delta.deletion([v])
            if dl.is_pure() and dl.dimension() == d and brute_vd(lk) and brute_vd(dl):
                want.add(v)
        assert shedding_vertices(delta) == want

    @settings(max_examples=25)
    @given(small_bounds())
    def test_deletion_keeps_dimension(self, b):
        delta = bs_order_complex(b)
        for v in shedding_vertices(delta):
            dl = delta.deletion([v])
            assert dl.is_pure() and dl.dimension() == delta.dimension()


class TestShelling:
    def test_pair_example(self):
        delta = bs_order_complex(PAIR)
        order = [["1,3", "1,4", "2,4", "3,4"], ["1,3", "2,3", "2,4", "3,4"]]
        assert is_shelling(delta, order)
        assert is_shelling(delta, order[::-1])

    def test_single_facet(self):
        assert is_shelling(SC([["a", "b"]]), [["a", "b"]])

    def test_disjoint_edges(self):
        for order in permutations([["a", "b"], ["c", "d"]]):
            assert not is_shelling(DISJOINT_EDGES, order)

    def test_not_permutation(self):
        with pytest.raises(ValidationError):
            is_shelling(DISJOINT_EDGES, [["a", "b"]])
        with pytest.raises(ValidationError):
            is_shelling(DISJOINT_EDGES, [["a", "b"], ["a", "c"]])

    def test_bad_order_detected(self):
        # path a-b-c-d: order ab, cd, bc is not a shelling, ab, bc, cd is
        path = SC([["a", "b"], ["b", "c"], ["c", "d"]])
        assert not is_shelling(path, [["a", "b"], ["c", "d"], ["b", "c"]])
        assert is_shelling(path, [["a", "b"], ["b", "c"], ["c", "d"]])

    def test_from_tree_pair_example(self):
        delta = bs_order_complex(PAIR)
        order = shelling_from_tree(delta, is_vertex_decomposable(delta))
        assert order == [["1,3", "2,3", "2,4", "3,4"], ["1,3", "1,4", "2,4", "3,4"]]

    def test_from_tree_simplex(self):
        delta = SC([["a", "b"]])
        assert shelling_from_tree(delta, is_vertex_decomposable(delta)) == [["a", "b"]]

    def test_from_tree_two_facets(self):
        delta = bs_order_complex(BSBounds((0, 1), (2, 3)))
        order = shelling_from_tree(delta, is_vertex_decomposable(delta))
        assert len(order) == 2 and is_shelling(delta, order)

    @settings(max_examples=30)
    @given(small_bounds())
    def test_h_vector_agreement(self, b):
        delta = bs_order_complex(b)
        order = shelling_from_tree(delta, is_vertex_decomposable(delta))
        assert is_shelling(delta, order)
        h = h_vector_from_shelling(delta, order)
        assert h == f_vector(delta).h
        assert min(h) >= 0


class TestAtomOrdering:
    def test_lex(self):
        assert lex_atom_ordering(PAIR) == [(1, 4), (2, 3)]
        assert lex_atom_ordering(BSBounds((0, 1), (2, 3))) == [(0, 2)]
        assert lex_atom_ordering(TRIPLE) == [(1, 3, 5), (2, 3, 4)]

    def test_fixed_coordinates(self):
        b = BSBounds((0, 2, 5), (1, 4, 5))
        assert lex_atom_ordering(b) == sorted(atoms(b)) == [(0, 3, 5), (1, 2, 5)]
        assert lex_atom_ordering(BSBounds((1, 2), (1, 2))) == []

    @given(small_bounds())
    def test_decreasing_index(self, b):
        order = lex_atom_ordering(b)
        lo = b.lower
        idx = [next(i for i in range(len(lo)) if a[i] != lo[i]) for a in order]
        assert idx == sorted(idx, reverse=True)


class TestVerifyRAO:
    def test_pair_example(self):
        assert verify_rao(HasseDiagram.from_bounds(PAIR), [(1, 4), (2, 3)])
        assert verify_rao(HasseDiagram.from_bounds(PAIR), [(2, 3), (1, 4)])

    def test_two_element(self):
        P = HasseDiagram.from_covers([("0", "1")])
        assert verify_rao(P, [])
        assert verify_rao(P, ["1"])

    def test_two_strands(self):
        assert not verify_rao(TWO_STRANDS, ["a", "b"])
        assert not verify_rao(TWO_STRANDS, ["b", "a"])
        assert find_rao(TWO_STRANDS) is None

    def test_validation(self):
        with pytest.raises(ValidationError):
            verify_rao(HasseDiagram.from_bounds(PAIR), [(1, 4)])
        unbounded = HasseDiagram.from_covers([("a", "b"), ("a", "c")])
        with pytest.raises(ValidationError):
            verify_rao(unbounded, ["b", "c"])
        impure = HasseDiagram.from_covers([("0", "a"), ("a", "1"), ("0", "1b"),
                                           ("1b", "1"), ("0", "c"), ("c", "d"), ("d", "1")])
        with pytest.raises(ValidationError):
            verify_rao(impure, ["a", "c", "1b"])

    def test_boolean_lattice(self):
        # B_3: every atom ordering is recursive
        Q = HasseDiagram.from_relation(["", "a", "b", "c", "ab", "ac", "bc", "abc"],
                                       lambda x, y: set(x) <= set(y))
        for order in permutations(["a", "b", "c"]):
            assert verify_rao(Q, list(order))

    def test_condition_one_failure(self):
        # bounded pure poset where atom a's upper interval forces a bad prefix
        # elements: 0 < a,b ; a < p,q ; b < q ; p,q < 1  (q covers both atoms)
        P = HasseDiagram.from_covers([("0", "a"), ("0", "b"), ("a", "p"), ("a", "q"),
                                      ("b", "q"), ("p", "t"), ("q", "t")])
        # order [a, b]: interval [b, t] has the single atom q, which covers a: fine
        assert verify_rao(P, ["a", "b"])
        # order [b, a]: [a, t] has atoms p, q; q covers b so q must come first; q < t ok
        assert verify_rao(P, ["b", "a"])

    def test_search_cap(self):
        # an interval with many atoms that fails lex forces the exhaustive search
        P = HasseDiagram.from_covers([("0", f"a{i}") for i in range(9)]
                                     + [(f"a{i}", f"x{i}") for i in range(9)]
                                     + [(f"x{i}", "z") for i in range(9)])
        assert not verify_rao(P, [f"a{i}" for i in range(9)])
        with pytest.raises(ResourceError):
            find_rao(P, max_atoms=3)

    @settings(max_examples=40)
    @given(small_bounds())
    def test_lex_is_rao(self, b):
        h = HasseDiagram.from_bounds(b)
        assert verify_rao(h, lex_atom_ordering(b))
        assert find_rao(h) == lex_atom_ordering(b) or len(h) == 1 or b.budget == 1


def test_deciders_agree_on_small_grid(small_grid):
    for b in small_grid:
        h = HasseDiagram.from_bounds(b)
        vd = is_vertex_decomposable(bs_order_complex(b)) is not None
        rao = find_rao(h) is not None
        assert vd and rao, b
