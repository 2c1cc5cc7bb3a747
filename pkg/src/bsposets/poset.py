"""Boij-Söderberg posets: bounds, elements, covers, chains and Hasse diagrams.

An element is a plain tuple of strictly increasing integers.  A poset
``Pi(lower, upper)`` is every such tuple lying componentwise between the two
bounds, ordered componentwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ResourceError, ValidationError

Seq = tuple[int, ...]

MAX_BUDGET = 64
MAX_ELEMENTS = 10**6


def as_sequence(entries: Iterable[int]) -> Seq:
    """Validate and freeze a strictly increasing integer sequence."""
    try:
        seq = tuple(entries)
    except TypeError as exc:
        raise ValidationError(f"not a sequence: {entries!r}") from exc
    if not seq:
        raise ValidationError("a degree sequence needs at least one entry")
    for x in seq:
        if isinstance(x, bool) or not isinstance(x, int):
            raise ValidationError(f"entries must be integers, got {x!r}")
    for a, b in zip(seq, seq[1:]):
        if a >= b:
            raise ValidationError(f"sequence {seq} is not strictly increasing")
    return seq


def parse_sequence(text: str) -> Seq:
    """Parse the comma-separated literal form, e.g. ``"1,3"``."""
    parts = [s.strip() for s in text.split(",")]
    try:
        return as_sequence(int(s) for s in parts)
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"cannot parse degree sequence {text!r}") from exc


def seq_label(d: Sequence[int]) -> str:
    """Comma-joined label; unambiguous for negative and multi-digit entries."""
    return ",".join(str(x) for x in d)


def is_strictly_increasing(d: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(d, d[1:]))


@dataclass(frozen=True)
class BSBounds:
    """The pair (lower, upper) defining a Boij-Söderberg poset."""

    lower: Seq
    upper: Seq

    def __post_init__(self):
        lower = as_sequence(self.lower)
        upper = as_sequence(self.upper)
        if len(lower) != len(upper):
            raise ValidationError(
                f"bounds have different lengths: {lower} vs {upper}")
        for i, (a, b) in enumerate(zip(lower, upper)):
            if a > b:
                raise ValidationError(
                    f"lower[{i}] = {a} exceeds upper[{i}] = {b}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def parse(cls, lower: str, upper: str) -> BSBounds:
        return cls(parse_sequence(lower), parse_sequence(upper))

    @property
    def p(self) -> int:
        return len(self.lower) - 1

    @property
    def length(self) -> int:
        return len(self.lower)

    @property
    def budget(self) -> int:
        """Total number of unit steps from bottom to top (the rank)."""
        return sum(b - a for a, b in zip(self.lower, self.upper))

    def contains(self, d: Sequence[int]) -> bool:
        d = tuple(d)
        return (len(d) == len(self.lower)
                and is_strictly_increasing(d)
                and all(a <= x <= b for a, x, b in zip(self.lower, d, self.upper)))

    def require(self, d: Sequence[int]) -> Seq:
        d = tuple(d)
        if not self.contains(d):
            raise ValidationError(f"{d} is not an element of {self}")
        return d

    def translate(self, t: int) -> BSBounds:
        return BSBounds(tuple(x + t for x in self.lower),
                        tuple(x + t for x in self.upper))

    def normalized(self) -> BSBounds:
        """Translate so that lower[0] == 0."""
        return self.translate(-self.lower[0])

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper)}

    def __str__(self):
        return f"Pi[({seq_label(self.lower)}),({seq_label(self.upper)})]"


def consecutive_bounds(p: int, k: int, start: int = 0) -> BSBounds:
    """Bounds (t, ..., t+p) and (t+k, ..., t+p+k)."""
    lo = tuple(range(start, start + p + 1))
    return BSBounds(lo, tuple(x + k for x in lo))


# -- order-theoretic primitives ----------------------------------------------

def leq(d: Sequence[int], e: Sequence[int]) -> bool:
    if len(d) != len(e):
        raise ValidationError(f"length mismatch: {tuple(d)} vs {tuple(e)}")
    return all(a <= b for a, b in zip(d, e))


def _nonempty(S) -> list[Seq]:
    items = [tuple(s) for s in S]
    if not items:
        raise ValidationError("meet/join of an empty set; use bottom()/top()")
    n = len(items[0])
    if any(len(s) != n for s in items):
        raise ValidationError("sequences of different lengths")
    return items


def meet(S: Iterable[Sequence[int]]) -> Seq:
    """Componentwise minimum; the infimum inside any common poset."""
    items = _nonempty(S)
    return tuple(min(col) for col in zip(*items))


def join(S: Iterable[Sequence[int]]) -> Seq:
    """Componentwise maximum; the supremum inside any common poset."""
    items = _nonempty(S)
    return tuple(max(col) for col in zip(*items))


def bottom(bounds: BSBounds) -> Seq:
    return bounds.lower


def top(bounds: BSBounds) -> Seq:
    return bounds.upper


def _check_budget(bounds: BSBounds) -> None:
    if bounds.budget > MAX_BUDGET:
        raise ResourceError(
            f"step budget {bounds.budget} exceeds the limit {MAX_BUDGET}")


def enumerate_elements(bounds: BSBounds,
                       max_elements: int | None = MAX_ELEMENTS) -> list[Seq]:
    """All elements of the poset in lexicographic order."""
    _check_budget(bounds)
    lo, hi = bounds.lower, bounds.upper
    n = len(lo)
    out: list[Seq] = []
    prefix: list[int] = []

    def rec(i: int, floor: int) -> None:
        if i == n:
            out.append(tuple(prefix))
            if max_elements is not None and len(out) > max_elements:
                raise ResourceError(
                    f"{bounds} has more than {max_elements} elements")
            return
        for x in range(max(lo[i], floor), hi[i] + 1):
            prefix.append(x)
            rec(i + 1, x + 1)
            prefix.pop()

    rec(0, lo[0])
    return out


def count_elements(bounds: BSBounds) -> int:
    """Number of elements, by dynamic programming over the last entry."""
    lo, hi = bounds.lower, bounds.upper
    ways = {x: 1 for x in range(lo[0], hi[0] + 1)}
    for i in range(1, len(lo)):
        nxt = {}
        for x in range(lo[i], hi[i] + 1):
            nxt[x] = sum(c for y, c in ways.items() if y < x)
        ways = nxt
    return sum(ways.values())


def _unit_steps(bounds: BSBounds, d: Seq) -> list[Seq]:
    hi = bounds.upper
    n = len(d)
    out = []
    for i in range(n):
        x = d[i] + 1
        if x <= hi[i] and (i == n - 1 or x < d[i + 1]):
            out.append(d[:i] + (x,) + d[i + 1:])
    out.sort()
    return out


def _unit_steps_down(bounds: BSBounds, d: Seq) -> list[Seq]:
    lo = bounds.lower
    out = []
    for i in range(len(d)):
        x = d[i] - 1
        if x >= lo[i] and (i == 0 or x > d[i - 1]):
            out.append(d[:i] + (x,) + d[i + 1:])
    out.sort()
    return out


def covers(bounds: BSBounds, d: Sequence[int], check: bool = False) -> list[Seq]:
    """Elements covering ``d``, in lexicographic order.

    With ``check=True`` the unit-step answer is compared against the
    definitional cover relation computed over the whole poset.
    """
    d = bounds.require(d)
    ups = _unit_steps(bounds, d)
    if check:
        brute = _brute_covers(enumerate_elements(bounds), d)
        if brute != ups:
            raise AssertionError(f"cover mismatch at {d}: {ups} vs {brute}")
    return ups


def _brute_covers(elements: Sequence[Seq], d: Seq) -> list[Seq]:
    above = [e for e in elements if e != d and leq(d, e)]
    return sorted(e for e in above
                  if not any(z != e and leq(z, e) for z in above))


def atoms(bounds: BSBounds) -> list[Seq]:
    return _unit_steps(bounds, bounds.lower)


def maximal_chains(bounds: BSBounds,
                   max_chains: int | None = None) -> list[tuple[Seq, ...]]:
    """Every cover path from bottom to top, lexicographically ordered."""
    _check_budget(bounds)
    out: list[tuple[Seq, ...]] = []
    path = [bounds.lower]

    def rec(d: Seq) -> None:
        if d == bounds.upper:
            out.append(tuple(path))
            if max_chains is not None and len(out) > max_chains:
                raise ResourceError(
                    f"{bounds} has more than {max_chains} maximal chains")
            return
        for e in _unit_steps(bounds, d):
            path.append(e)
            rec(e)
            path.pop()

    rec(bounds.lower)
    return out


def count_maximal_chains(bounds: BSBounds) -> int:
    """Number of maximal chains, by path counting over the Hasse diagram."""
    ways: dict[Seq, int] = {}
    for d in enumerate_elements(bounds):
        if d == bounds.lower:
            ways[d] = 1
        else:
            ways[d] = sum(ways[c] for c in _unit_steps_down(bounds, d))
    return ways[bounds.upper]


def interval(bounds: BSBounds, v: Sequence[int], u: Sequence[int]) -> BSBounds:
    """The closed interval [v, u], which is again a Boij-Söderberg poset."""
    v, u = bounds.require(v), bounds.require(u)
    if not leq(v, u):
        raise ValidationError(f"{v} is not below {u}")
    return BSBounds(v, u)


POINT = BSBounds((0,), (0,))


def reduce_bounds(bounds: BSBounds) -> tuple[BSBounds, tuple[bool, ...]]:
    """Drop coordinates where lower and upper agree.

    Returns the reduced bounds and a mask of kept coordinates.  When every
    coordinate is fixed the poset is a single point and ``POINT`` is
    returned with an all-False mask.
    """
    mask = tuple(a < b for a, b in zip(bounds.lower, bounds.upper))
    if not any(mask):
        return POINT, mask
    return BSBounds(project(bounds.lower, mask), project(bounds.upper, mask)), mask


def project(d: Sequence[int], mask: Sequence[bool]) -> Seq:
    return tuple(x for x, keep in zip(d, mask) if keep)


# -- generic finite posets ---------------------------------------------------

class HasseDiagram:
    """A finite poset stored by its sorted elements and cover edges.

    ``edges`` holds index pairs ``(i, j)`` meaning ``elements[j]`` covers
    ``elements[i]``.  Elements must be hashable and mutually sortable.
    """

    def __init__(self, elements: Iterable[Hashable],
                 edges: Iterable[tuple[int, int]]):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValidationError("duplicate elements")
        n = len(self.elements)
        self.edges = tuple(sorted(set(edges)))
        self.up: list[list[int]] = [[] for _ in range(n)]
        self.down: list[list[int]] = [[] for _ in range(n)]
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValidationError(f"bad edge {(i, j)}")
            self.up[i].append(j)
            self.down[j].append(i)
        self.order = self._topological_order()

    @classmethod
    def from_bounds(cls, bounds: BSBounds, check: bool = False,
                    max_elements: int | None = MAX_ELEMENTS) -> HasseDiagram:
        elements = enumerate_elements(bounds, max_elements)
        index = {d: i for i, d in enumerate(elements)}
        edges = [(index[d], index[e])
                 for d in elements for e in _unit_steps(bounds, d)]
        h = cls(elements, edges)
        if check:
            brute = cls.from_relation(elements, leq)
            if brute.edges != h.edges:
                raise AssertionError("unit-step covers disagree with brute force")
        return h

    @classmethod
    def from_relation(cls, elements: Iterable[Hashable],
                      le: Callable[[object, object], bool]) -> HasseDiagram:
        """Build from an order relation by brute-force cover detection."""
        elements = sorted(set(elements))
        n = len(elements)
        less = [[i != j and le(elements[i], elements[j]) for j in range(n)]
                for i in range(n)]
        edges = []
        for i in range(n):
            for j in range(n):
                if less[i][j] and not any(less[i][k] and less[k][j]
                                          for k in range(n)):
                    edges.append((i, j))
        return cls(elements, edges)

    @classmethod
    def from_covers(cls, pairs: Iterable[tuple[Hashable, Hashable]],
                    elements: Iterable[Hashable] = ()) -> HasseDiagram:
        """Build from (lower, upper) generating pairs; transitive pairs are dropped."""
        pairs = list(pairs)
        els = set(elements)
        for a, b in pairs:
            els.update((a, b))
        els = sorted(els)
        idx = {x: i for i, x in enumerate(els)}
        h = cls(els, [(idx[a], idx[b]) for a, b in pairs])
        return h.induced(els)

    def _topological_order(self) -> list[int]:
        n = len(self.elements)
        indeg = [len(self.down[j]) for j in range(n)]
        ready = [i for i in range(n) if indeg[i] == 0]
        out = []
        while ready:
            i = ready.pop(0)
            out.append(i)
            for j in self.up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        if len(out) != n:
            raise ValidationError("cover edges contain a cycle")
        return out

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"HasseDiagram({len(self.elements)} elements, {len(self.edges)} edges)"

    @cached_property
    def upsets(self) -> list[int]:
        """Bitmask of indices ``j`` with ``elements[i] <= elements[j]``."""
        n = len(self.elements)
        masks = [0] * n
        for i in reversed(self.order):
            m = 1 << i
            for j in self.up[i]:
                m |= masks[j]
            masks[i] = m
        return masks

    @cached_property
    def downsets(self) -> list[int]:
        n = len(self.elements)
        masks = [0] * n
        for j in self.order:
            m = 1 << j
            for i in self.down[j]:
                m |= masks[i]
            masks[j] = m
        return masks

    def le(self, i: int, j: int) -> bool:
        return bool(self.upsets[i] >> j & 1)

    def leq(self, x, y) -> bool:
        return self.le(self.index[x], self.index[y])

    def is_cover(self, i: int, j: int) -> bool:
        return j in self.up[i]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.up[i]]

    @property
    def bottom(self) -> int | None:
        m = self.minimal()
        return m[0] if len(m) == 1 else None

    @property
    def top(self) -> int | None:
        m = self.maximal()
        return m[0] if len(m) == 1 else None

    def is_bounded(self) -> bool:
        return len(self) > 0 and self.bottom is not None and self.top is not None

    @cached_property
    def heights(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        h = [0] * len(self)
        for j in self.order:
            if self.down[j]:
                h[j] = 1 + max(h[i] for i in self.down[j])
        return h

    @cached_property
    def depths(self) -> list[int]:
        """Length of the longest chain starting at each element."""
        h = [0] * len(self)
        for i in reversed(self.order):
            if self.up[i]:
                h[i] = 1 + max(h[j] for j in self.up[i])
        return h

    def maximal_chains(self, max_chains: int | None = None) -> list[tuple[int, ...]]:
        """Maximal chains as index tuples, lexicographic in element order."""
        out = []
        path: list[int] = []

        def rec(i):
            path.append(i)
            if not self.up[i]:
                out.append(tuple(path))
                if max_chains is not None and len(out) > max_chains:
                    raise ResourceError(f"more than {max_chains} maximal chains")
            else:
                for j in sorted(self.up[i]):
                    rec(j)
            path.pop()

        for i in self.minimal():
            rec(i)
        return out

    def chain_lengths(self) -> set[int]:
        """Set of lengths of maximal chains, computed without listing them."""
        lengths: list[set[int]] = [set() for _ in range(len(self))]
        for i in reversed(self.order):
            lengths[i] = {0} if not self.up[i] else {
                1 + x for j in self.up[i] for x in lengths[j]}
        out: set[int] = set()
        for i in self.minimal():
            out |= lengths[i]
        return out

    def count_maximal_chains(self) -> int:
        ways = [0] * len(self)
        for i in reversed(self.order):
            ways[i] = 1 if not self.up[i] else sum(ways[j] for j in self.up[i])
        return sum(ways[i] for i in self.minimal())

    def is_pure(self) -> bool:
        return len(self.chain_lengths()) <= 1

    def rank(self) -> int:
        """Length of a longest maximal chain."""
        return max(self.heights, default=0)

    def reverse(self) -> HasseDiagram:
        """Same elements with every cover edge flipped."""
        return HasseDiagram(self.elements, [(j, i) for i, j in self.edges])

    def induced(self, subset: Iterable[Hashable]) -> HasseDiagram:
        """Induced subposet; covers are recomputed from the order relation."""
        keep = sorted(self.index[x] for x in set(subset))
        new = {i: a for a, i in enumerate(keep)}
        keepmask = 0
        for i in keep:
            keepmask |= 1 << i
        edges = []
        for i in keep:
            above = self.upsets[i] & keepmask & ~(1 << i)
            strictly_above_others = 0
            j_bits = above
            while j_bits:
                low = j_bits & -j_bits
                j = low.bit_length() - 1
                strictly_above_others |= self.upsets[j] & ~(1 << j)
                j_bits ^= low
            minimal_above = above & ~strictly_above_others
            while minimal_above:
                low = minimal_above & -minimal_above
                edges.append((new[i], new[low.bit_length() - 1]))
                minimal_above ^= low
        return HasseDiagram([self.elements[i] for i in keep], edges)

    def without(self, *removed: Hashable) -> HasseDiagram:
        gone = set(removed)
        return self.induced(x for x in self.elements if x not in gone)

    def upset_diagram(self, x: Hashable) -> HasseDiagram:
        i = self.index[x]
        return self.induced(self.elements[j] for j in range(len(self))
                            if self.le(i, j))

    def label(self, i: int) -> str:
        x = self.elements[i]
        if isinstance(x, tuple):
            return seq_label(x)
        return str(x)

    def cover_pairs(self) -> list[tuple[Hashable, Hashable]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.edges]

    def to_json(self) -> dict:
        return {
            "elements": [list(x) if isinstance(x, tuple) else x
                         for x in self.elements],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> HasseDiagram:
        try:
            elements = [tuple(x) if isinstance(x, list) else x
                        for x in data["elements"]]
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed poset JSON: {exc}") from exc
        order = sorted(range(len(elements)), key=lambda i: elements[i])
        pos = {i: a for a, i in enumerate(order)}
        return cls([elements[i] for i in order],
                   [(pos[i], pos[j]) for i, j in edges])


def _signature(h: HasseDiagram, i: int) -> tuple[int, ...]:
    return (h.heights[i], h.depths[i], len(h.up[i]), len(h.down[i]),
            h.upsets[i].bit_count(), h.downsets[i].bit_count())


def poset_isomorphic(P: HasseDiagram, Q: HasseDiagram) -> dict | None:
    """Search for an order isomorphism ``P -> Q``.

    Backtracking over elements of ``P`` in topological order; candidates in
    ``Q`` must share rank, degree and up/down-set sizes, and must agree on
    covers with everything already mapped.  Meant for small posets.
    """
    n = len(P)
    if n != len(Q) or len(P.edges) != len(Q.edges):
        return None
    sp = [_signature(P, i) for i in range(n)]
    sq = [_signature(Q, j) for j in range(n)]
    if sorted(sp) != sorted(sq):
        return None
    by_sig: dict[tuple, list[int]] = {}
    for j in range(n):
        by_sig.setdefault(sq[j], []).append(j)

    order = sorted(range(n), key=lambda i: (P.heights[i], i))
    qup = [set(u) for u in Q.up]
    pup = [set(u) for u in P.up]
    image = [-1] * n
    used = [False] * n
    placed: list[int] = []

    def consistent(i: int, j: int) -> bool:
        for a in placed:
            b = image[a]
            if (i in pup[a]) != (j in qup[b]):
                return False
            if (a in pup[i]) != (b in qup[j]):
                return False
        return True

    def rec(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in by_sig[sp[i]]:
            if not used[j] and consistent(i, j):
                image[i] = j
                used[j] = True
                placed.append(i)
                if rec(pos + 1):
                    return True
                placed.pop()
                used[j] = False
                image[i] = -1
        return False

    if not rec(0):
        return None
    return {P.elements[i]: Q.elements[image[i]] for i in range(n)}


def is_order_isomorphism(P: HasseDiagram, Q: HasseDiagram, mapping: dict,
                         reversing: bool = False) -> bool:
    """Check that ``mapping`` is a bijection preserving and reflecting order.

    With ``reversing=True`` the order is reversed instead.
    """
    if len(mapping) != len(P) or set(mapping) != set(P.elements):
        return False
    if set(mapping.values()) != set(Q.elements) or len(Q) != len(P):
        return False
    idx = [Q.index[mapping[x]] for x in P.elements]
    n = len(P)
    for a in range(n):
        for b in range(n):
            want = P.le(a, b)
            got = Q.le(idx[b], idx[a]) if reversing else Q.le(idx[a], idx[b])
            if want != got:
                return False
    return True


def box_candidates(bounds: BSBounds) -> Iterable[Seq]:
    """Every integer tuple in the bounding box, strict or not (test helper)."""
    return product(*(range(a, b + 1) for a, b in zip(bounds.lower, bounds.upper)))


def grid(max_length: int = 4, max_entry: int = 6,
         max_elements: int = 200) -> list[BSBounds]:
    """All normalized bounds with entries in ``[0, max_entry]``.

    ``lower[0]`` is pinned to 0, which covers every bounds up to translation.
    """
    out = []
    for q in range(1, max_length + 1):
        for lo in combinations(range(max_entry + 1), q):
            if lo[0] != 0:
                continue
            for hi in combinations(range(max_entry + 1), q):
                if all(a <= b for a, b in zip(lo, hi)):
                    b = BSBounds(lo, hi)
                    if count_elements(b) <= max_elements:
                        out.append(b)
    return out
