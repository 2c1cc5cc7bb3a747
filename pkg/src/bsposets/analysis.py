"""Closed-form counts, duality and shearing maps, and membership search."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ResourceError, ValidationError
from .poset import (BSBounds, HasseDiagram, Seq, consecutive_bounds,
                    count_elements, count_maximal_chains, enumerate_elements,
                    is_order_isomorphism, poset_isomorphic)

MAX_WINDOW = 12


def _check_nonneg(**kw) -> None:
    for name, v in kw.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ValidationError(f"{name} must be a non-negative integer, got {v!r}")


def vertex_count_formula(p: int, k: int) -> int:
    """Elements of the consecutive-form poset: C(p+k+1, p+1)."""
    _check_nonneg(p=p, k=k)
    return math.comb(p + k + 1, p + 1)


def facet_count_formula(p: int, k: int) -> int:
    """Maximal chains of the consecutive-form poset.

    (pk+k)! * prod_{i=0..p} i!/(k+i)!, a multi-dimensional Catalan number.
    """
    _check_nonneg(p=p, k=k)
    num = math.factorial(p * k + k)
    den = 1
    for i in range(p + 1):
        num *= math.factorial(i)
        den *= math.factorial(k + i)
    q, r = divmod(num, den)
    assert r == 0, f"f({p},{k}) is not an integer"
    return q


def is_consecutive_form(bounds: BSBounds) -> bool:
    lo, hi = bounds.lower, bounds.upper
    t, k = lo[0], hi[0] - lo[0]
    return lo == tuple(range(t, t + len(lo))) and hi == tuple(x + k for x in lo)


@dataclass(frozen=True)
class CountReport:
    bounds: BSBounds
    vertex_count: int
    facet_count: int
    formula_applicable: bool
    v_lo: int
    v_hi: int
    n_lo: int
    n_hi: int
    k_lo: int
    k_hi: int
    printed_v_hi: int

    def within_bounds(self) -> bool:
        return (self.v_lo <= self.vertex_count <= self.v_hi
                and self.n_lo <= self.facet_count <= self.n_hi)

    def printed_bound_fails(self) -> bool:
        """The upper vertex bound with exponent p is violated here."""
        return self.vertex_count > self.printed_v_hi

    def to_json(self) -> dict:
        return {
            "lower": list(self.bounds.lower),
            "upper": list(self.bounds.upper),
            "vertices": str(self.vertex_count),
            "facets": str(self.facet_count),
            "formula_applicable": self.formula_applicable,
            "bounds": {
                "v_lo": str(self.v_lo), "v_hi": str(self.v_hi),
                "n_lo": str(self.n_lo), "n_hi": str(self.n_hi),
                "k_lo": str(self.k_lo), "k_hi": str(self.k_hi),
                "printed_v_hi": str(self.printed_v_hi),
            },
        }


def count_report(bounds: BSBounds) -> CountReport:
    """Exact counts alongside the sandwich bounds from consecutive-form posets.

    k_lo = upper[0] - lower[p] + p and k_hi = upper[p] - lower[0] - p, both
    clamped at 0.  The vertex bounds are C(p+k+1, p+1) for those k; the
    variant C(upper[p] - lower[0] + 1, p) is kept as ``printed_v_hi``.
    """
    p = bounds.p
    lo, hi = bounds.lower, bounds.upper
    v = len(enumerate_elements(bounds))
    n = count_maximal_chains(bounds)
    k_lo = max(0, hi[0] - lo[p] + p)
    k_hi = max(0, hi[p] - lo[0] - p)
    report = CountReport(
        bounds=bounds, vertex_count=v, facet_count=n,
        formula_applicable=is_consecutive_form(bounds),
        v_lo=vertex_count_formula(p, k_lo), v_hi=vertex_count_formula(p, k_hi),
        n_lo=facet_count_formula(p, k_lo), n_hi=facet_count_formula(p, k_hi),
        k_lo=k_lo, k_hi=k_hi,
        printed_v_hi=math.comb(hi[p] - lo[0] + 1, p),
    )
    if report.formula_applicable:
        k = hi[0] - lo[0]
        assert v == vertex_count_formula(p, k) and n == facet_count_formula(p, k)
    return report


@dataclass(frozen=True)
class PosetIso:
    """An explicit element map between two Boij-Söderberg posets."""

    source: BSBounds
    target: BSBounds
    mapping: dict = field(repr=False)
    reversing: bool

    def __call__(self, d) -> Seq:
        return self.mapping[tuple(d)]

    def verify(self) -> bool:
        """Element-by-element check of bijectivity and (reversed) monotonicity."""
        P = HasseDiagram.from_bounds(self.source)
        Q = HasseDiagram.from_bounds(self.target)
        return is_order_isomorphism(P, Q, self.mapping, reversing=self.reversing)

    def to_json(self) -> list:
        return [[list(a), list(self.mapping[a])] for a in sorted(self.mapping)]


def _dual_point(d: Seq, shift: int, m: int) -> Seq:
    return tuple(m - (x - shift) for x in reversed(d))


def dual_bounds(bounds: BSBounds) -> PosetIso:
    """Order-reversing bijection onto another Boij-Söderberg poset.

    After translating so that lower[0] = 0 and setting m = upper[p], each
    entry x goes to m - x and the sequence is reversed.
    """
    shift = bounds.lower[0]
    m = bounds.upper[-1] - shift
    target = BSBounds(_dual_point(bounds.upper, shift, m),
                      _dual_point(bounds.lower, shift, m))
    mapping = {d: _dual_point(d, shift, m) for d in enumerate_elements(bounds)}
    return PosetIso(bounds, target, mapping, reversing=True)


def is_self_dual_arith(bounds: BSBounds) -> bool:
    """Lower is an arithmetic progression (0, m, ..., pm) up to translation,
    with m >= 1, and upper is lower shifted by a constant b >= 0."""
    b = bounds.normalized()
    lo, hi = b.lower, b.upper
    shift = hi[0] - lo[0]
    if any(y - x != shift for x, y in zip(lo, hi)):
        return False
    if len(lo) == 1:
        return True
    m = lo[1]
    return m >= 1 and lo == tuple(i * m for i in range(len(lo)))


def shear(p: int, k: int) -> PosetIso:
    """Isomorphism from the consecutive-form poset with p+1 entries and width k
    onto the one with k entries and width p+1.

    Each element is first sent through the self-duality of the source, then
    to the complement of its entry set inside {0, ..., p+k}.
    """
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ValidationError(f"p must be >= 1, got {p!r}")
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= p:
        raise ValidationError(f"k must satisfy 1 <= k <= p, got {k!r}")
    source = consecutive_bounds(p, k)
    target = BSBounds(tuple(range(k)), tuple(range(p + 1, p + k + 1)))
    universe = set(range(p + k + 1))
    dual = dual_bounds(source)
    mapping = {d: tuple(sorted(universe - set(dual(d))))
               for d in enumerate_elements(source)}
    return PosetIso(source, target, mapping, reversing=False)


def complement_map(p: int, k: int) -> dict:
    """The bare complement map on the source of ``shear(p, k)``; order-reversing."""
    universe = set(range(p + k + 1))
    return {d: tuple(sorted(universe - set(d)))
            for d in enumerate_elements(consecutive_bounds(p, k))}


# -- bounded membership search ----------------------------------------------

def _candidate_bounds(n_entries: int, window: int, budget: int):
    for lo_rest in combinations(range(1, window + 1), n_entries - 1):
        lo = (0,) + lo_rest
        for hi in combinations(range(window + 1), n_entries):
            if all(a <= b for a, b in zip(lo, hi)) and \
                    sum(b - a for a, b in zip(lo, hi)) == budget:
                yield BSBounds(lo, hi)


def bs_membership_search(P: HasseDiagram, window: int) -> tuple[BSBounds, dict] | None:
    """Look for Boij-Söderberg bounds whose poset is isomorphic to ``P``.

    Candidates have lower[0] = 0 (translation), entries in [0, window], the
    same number of elements as ``P`` and step budget equal to the rank of
    ``P``.  Returns the lexicographically least match (by sequence length,
    then bounds) with an isomorphism, or None.  None only means that no
    match exists inside the window.
    """
    if isinstance(window, bool) or not isinstance(window, int) or window < 0:
        raise ValidationError(f"window must be a non-negative integer, got {window!r}")
    if window > MAX_WINDOW:
        raise ResourceError(f"window {window} exceeds the search limit {MAX_WINDOW}")
    n = len(P)
    if n == 0 or not P.is_bounded() or not P.is_pure():
        return None
    rank = P.rank()
    n_chains = P.count_maximal_chains()
    for length in range(1, window + 2):
        for b in _candidate_bounds(length, window, rank):
            if count_elements(b) != n or count_maximal_chains(b) != n_chains:
                continue
            Q = HasseDiagram.from_bounds(b)
            iso = poset_isomorphic(P, Q)
            if iso is not None:
                return b, iso
    return None


def deleted_poset(bounds: BSBounds, *removed) -> HasseDiagram:
    """The poset with some elements removed, covers recomputed."""
    h = HasseDiagram.from_bounds(bounds)
    return h.without(*(bounds.require(d) for d in removed))

