"""Vertex decompositions, shellings and recursive atom orderings."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .complex import SimplicialComplex, sort_labels
from .errors import ResourceError, ValidationError
from .poset import BSBounds, HasseDiagram, Seq, atoms, reduce_bounds

MAX_RAO_ATOMS = 7


@dataclass(frozen=True, eq=False)
class SheddingTree:
    """Certificate of vertex-decomposability.

    A leaf certifies a simplex (or the void complex, or ``{∅}``).  An inner
    node names a shedding vertex together with certificates for its link and
    deletion.
    """

    complex: SimplicialComplex
    vertex: str | None = None
    link: SheddingTree | None = field(default=None, repr=False)
    deletion: SheddingTree | None = field(default=None, repr=False)

    @property
    def is_leaf(self) -> bool:
        return self.vertex is None

    def to_json(self) -> dict:
        if self.is_leaf:
            return {"leaf": True, "facets": self.complex.sorted_facets()}
        return {"vertex": self.vertex,
                "link": self.link.to_json(),
                "del": self.deletion.to_json()}

    @classmethod
    def from_json(cls, data: dict, delta: SimplicialComplex) -> SheddingTree:
        """Rebuild a tree for ``delta``, recomputing every node's complex."""
        if data.get("leaf"):
            return cls(delta)
        try:
            v = data["vertex"]
            return cls(delta, v,
                       cls.from_json(data["link"], delta.link([v])),
                       cls.from_json(data["del"], delta.deletion([v])))
        except KeyError as exc:
            raise ValidationError(f"malformed shedding tree: missing {exc}") from exc

    def size(self) -> int:
        if self.is_leaf:
            return 1
        return 1 + self.link.size() + self.deletion.size()


def _require_pure(delta: SimplicialComplex) -> None:
    if not delta.is_pure():
        raise ValidationError("vertex-decomposability is defined for pure complexes")


class _Decider:
    """Memoised search on bitmask facets, private to one top-level call."""

    def __init__(self, delta: SimplicialComplex):
        self.verts = delta.vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.memo: dict[frozenset, object] = {}

    def masks(self, delta: SimplicialComplex) -> frozenset:
        out = []
        for f in delta.facets:
            m = 0
            for v in f:
                m |= 1 << self.index[v]
            out.append(m)
        return frozenset(out)

    def complex(self, facets: frozenset) -> SimplicialComplex:
        return SimplicialComplex(
            [self.verts[i] for i in range(m.bit_length()) if m >> i & 1]
            for m in facets)

    @staticmethod
    def split(facets: frozenset, bit: int):
        """Link and deletion of a vertex when it qualifies as a shedding candidate.

        Qualifies means: the deletion keeps the full dimension, i.e. every
        facet through the vertex loses it into some facet avoiding it.
        """
        with_v = [f & ~bit for f in facets if f & bit]
        without = [f for f in facets if not f & bit]
        if not with_v or not without:
            return None
        for f in with_v:
            if not any(f & ~g == 0 for g in without):
                return None
        return frozenset(with_v), frozenset(without)

    def support(self, facets: frozenset) -> list[int]:
        m = 0
        for f in facets:
            m |= f
        return [i for i in range(m.bit_length()) if m >> i & 1]

    @staticmethod
    def strip_cone(facets: frozenset) -> tuple[frozenset, int]:
        """Split off the vertices lying in every facet.

        A cone is vertex-decomposable exactly when its base is, and coning
        preserves shedding vertices, so the search runs on the base.
        """
        it = iter(facets)
        common = next(it, 0)
        for f in it:
            common &= f
        if not common:
            return facets, 0
        return frozenset(f & ~common for f in facets), common

    def decide(self, facets: frozenset):
        """Return a tree-building recipe, or None when not decomposable."""
        base, _ = self.strip_cone(facets)
        if base in self.memo:
            return self.memo[base]
        if len(base) <= 1:
            result = ("leaf",)
        else:
            result = None
            for i in self.support(base):
                parts = self.split(base, 1 << i)
                if parts is None:
                    continue
                lk, dl = parts
                if self.decide(lk) is not None and self.decide(dl) is not None:
                    result = ("node", i)
                    break
        self.memo[base] = result
        return result

    def is_shedding(self, facets: frozenset, i: int) -> bool:
        parts = self.split(facets, 1 << i)
        if parts is None:
            return False
        lk, dl = parts
        return self.decide(lk) is not None and self.decide(dl) is not None

    def build(self, facets: frozenset, cache: dict) -> SheddingTree:
        if facets in cache:
            return cache[facets]
        base, apex = self.strip_cone(facets)
        recipe = self.memo[base]
        cx = self.complex(facets)
        if recipe[0] == "leaf":
            tree = SheddingTree(cx)
        else:
            i = recipe[1]
            lk, dl = self.split(base, 1 << i)
            lk = frozenset(f | apex for f in lk)
            dl = frozenset(f | apex for f in dl)
            tree = SheddingTree(cx, self.verts[i],
                                self.build(lk, cache), self.build(dl, cache))
        cache[facets] = tree
        return tree


def is_vertex_decomposable(delta: SimplicialComplex) -> SheddingTree | None:
    """Certificate tree if ``delta`` is vertex-decomposable, else None.

    Shedding vertices are tried in label order; a vertex is only considered
    when its deletion keeps the dimension (so both link and deletion are
    pure).
    """
    _require_pure(delta)
    dec = _Decider(delta)
    top = dec.masks(delta)
    if dec.decide(top) is None:
        return None
    return dec.build(top, {})


def shedding_vertices(delta: SimplicialComplex) -> set[str]:
    _require_pure(delta)
    dec = _Decider(delta)
    top = dec.masks(delta)
    return {dec.verts[i] for i in dec.support(top) if dec.is_shedding(top, i)}


def check_certificate(delta: SimplicialComplex, tree: SheddingTree) -> bool:
    """Replay a certificate: every node's link/deletion must match its subtrees."""
    seen: set[int] = set()

    def rec(delta: SimplicialComplex, tree: SheddingTree) -> bool:
        if tree.complex != delta:
            return False
        if id(tree) in seen:
            return True
        if tree.is_leaf:
            ok = len(delta.facets) <= 1
        else:
            v = tree.vertex
            if v not in delta.vertices:
                return False
            lk, dl = delta.link([v]), delta.deletion([v])
            d = delta.dimension()
            ok = (lk.is_pure() and dl.is_pure()
                  and dl.dimension() == d and lk.dimension() == d - 1
                  and rec(lk, tree.link) and rec(dl, tree.deletion))
        if ok:
            seen.add(id(tree))
        return ok

    return rec(delta, tree)


def _as_facet_list(delta: SimplicialComplex, order: Iterable[Iterable[str]]) -> list[frozenset]:
    facets = [frozenset(str(v) for v in f) for f in order]
    if len(facets) != len(delta.facets) or set(facets) != delta.facets:
        raise ValidationError("facet order is not a permutation of the facets")
    return facets


def is_shelling(delta: SimplicialComplex, facet_order: Iterable[Iterable[str]]) -> bool:
    """Each facet must meet the earlier ones in a pure codimension-one subcomplex."""
    _require_pure(delta)
    facets = _as_facet_list(delta, facet_order)
    for j in range(1, len(facets)):
        fj = facets[j]
        inters = [facets[i] & fj for i in range(j)]
        ridges = {s for s in inters if len(s) == len(fj) - 1}
        if not ridges:
            return False
        for s in inters:
            if not any(s <= r for r in ridges):
                return False
    return True


def shelling_from_tree(delta: SimplicialComplex, tree: SheddingTree) -> list[list[str]]:
    """Shelling order: the deletion's shelling, then the cone over the link's."""
    if not check_certificate(delta, tree):
        raise ValidationError("shedding tree does not certify this complex")
    memo: dict[int, list[frozenset]] = {}

    def rec(t: SheddingTree) -> list[frozenset]:
        if id(t) in memo:
            return memo[id(t)]
        if t.is_leaf:
            out = list(t.complex.facets)
        else:
            out = rec(t.deletion) + [f | {t.vertex} for f in rec(t.link)]
        memo[id(t)] = out
        return out

    return [sort_labels(f) for f in rec(tree)]


def h_vector_from_shelling(delta: SimplicialComplex,
                           facet_order: Sequence[Iterable[str]]) -> tuple[int, ...]:
    """h_i counts facets whose restriction (new minimal face) has i vertices."""
    facets = _as_facet_list(delta, facet_order)
    d = max((len(f) for f in facets), default=0)
    h = [0] * (d + 1)
    for j, fj in enumerate(facets):
        ridges = {frozenset(fj & facets[i]) for i in range(j)}
        missing = {next(iter(fj - r)) for r in ridges if len(r) == len(fj) - 1}
        h[len(missing)] += 1
    return tuple(h)


# -- recursive atom orderings -------------------------------------------------

def lex_atom_ordering(bounds: BSBounds) -> list[Seq]:
    """Atoms sorted lexicographically, smallest first.

    Fixed coordinates do not move, so the atoms of the reduced poset lift
    back by re-inserting the fixed entries; the order is unaffected.
    """
    reduced, mask = reduce_bounds(bounds)
    if not any(mask):
        return []
    lifted = []
    for a in atoms(reduced):
        it = iter(a)
        lifted.append(tuple(next(it) if keep else x
                            for x, keep in zip(bounds.lower, mask)))
    return sorted(lifted)


class _RAO:
    def __init__(self, P: HasseDiagram, max_atoms: int):
        self.P = P
        self.top = P.top
        self.max_atoms = max_atoms
        self.holds_memo: dict[tuple, bool] = {}
        self.exists_memo: dict[tuple, tuple | None] = {}

    def holds(self, x: int, ordering: tuple[int, ...]) -> bool:
        key = (x, ordering)
        if key not in self.holds_memo:
            self.holds_memo[key] = self._holds(x, ordering)
        return self.holds_memo[key]

    def _holds(self, x: int, ordering: tuple[int, ...]) -> bool:
        P = self.P
        if self.top in P.up[x]:
            return True
        ups = P.upsets
        # (2) common upper bounds of a_i, a_j sit above some z covering a_j and an earlier a_k
        for j in range(1, len(ordering)):
            aj = ordering[j]
            zs = [z for z in P.up[aj] if any(z in P.up[ordering[k]] for k in range(j))]
            zmask_above = 0
            for z in zs:
                zmask_above |= ups[z]
            for i in range(j):
                common = ups[ordering[i]] & ups[aj]
                if common & ~zmask_above:
                    return False
        # (1) each [a_j, 1] has an ordering putting atoms above earlier a_i first
        for j, aj in enumerate(ordering):
            first = frozenset(b for b in P.up[aj]
                              if any(b in P.up[ordering[i]] for i in range(j)))
            if self.exists(aj, first) is None:
                return False
        return True

    def candidates(self, x: int, first: frozenset):
        P = self.P
        head = sorted(first)
        tail = sorted(b for b in P.up[x] if b not in first)
        yield tuple(head + tail)
        if len(P.up[x]) > self.max_atoms:
            raise ResourceError(
                f"interval above {P.label(x)} has {len(P.up[x])} atoms; "
                f"exhaustive ordering search is capped at {self.max_atoms}")
        lex = tuple(head + tail)
        for h in permutations(head):
            for t in permutations(tail):
                cand = h + t
                if cand != lex:
                    yield cand

    def exists(self, x: int, first: frozenset) -> tuple | None:
        """Some recursive atom ordering of [x, 1] with ``first`` as a prefix."""
        key = (x, first)
        if key in self.exists_memo:
            return self.exists_memo[key]
        found = None
        if self.top in self.P.up[x] or x == self.top:
            found = tuple(sorted(self.P.up[x]))
        else:
            for cand in self.candidates(x, first):
                if self.holds(x, cand):
                    found = cand
                    break
        self.exists_memo[key] = found
        return found


def _require_bounded_pure(P: HasseDiagram) -> None:
    if not P.is_bounded():
        raise ValidationError("poset is not bounded")
    if not P.is_pure():
        raise ValidationError("poset is not pure")


def verify_rao(P: HasseDiagram, ordering: Sequence, max_atoms: int = MAX_RAO_ATOMS) -> bool:
    """Whether ``ordering`` of the atoms of ``P`` is a recursive atom ordering.

    Orderings of the upper intervals are searched for, lexicographic first,
    then exhaustively up to ``max_atoms`` atoms per interval.
    """
    _require_bounded_pure(P)
    try:
        idx = tuple(P.index[tuple(a) if isinstance(a, list) else a] for a in ordering)
    except KeyError as exc:
        raise ValidationError(f"{exc} is not an element of the poset") from exc
    rao = _RAO(P, max_atoms)
    bot = P.bottom
    if len(P) == 1 or rao.top in P.up[bot]:
        return True
    if sorted(idx) != sorted(P.up[bot]):
        raise ValidationError("ordering is not a permutation of the atoms")
    return rao.holds(bot, idx)


def find_rao(P: HasseDiagram, max_atoms: int = MAX_RAO_ATOMS) -> list | None:
    """Some recursive atom ordering of ``P`` (lexicographic tried first), or None."""
    _require_bounded_pure(P)
    rao = _RAO(P, max_atoms)
    found = rao.exists(P.bottom, frozenset())
    if found is None:
        return None
    return [P.elements[i] for i in found]
