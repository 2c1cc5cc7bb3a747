"""Simplicial complexes stored by their facets.

Faces are never materialised except when counting them.  The void complex
(no facets at all) and the complex ``{∅}`` (the empty face only) are kept
distinct.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ValidationError
from .poset import BSBounds, HasseDiagram, seq_label

def label_key(label: str):
    """Sort key: comma-separated integer labels compare as integer tuples."""
    try:
        return (0, tuple(int(x) for x in label.split(",")), label)
    except ValueError:
        return (1, (), label)


def sort_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)


def _maximal(faces: Iterable[frozenset]) -> frozenset:
    """Keep only the inclusion-maximal sets."""
    faces = sorted(set(faces), key=len, reverse=True)
    kept: list[frozenset] = []
    for f in faces:
        if not any(f <= g for g in kept):
            kept.append(f)
    return frozenset(kept)


class SimplicialComplex:
    """A finite simplicial complex given by its facets.

    Vertex labels are strings.  Any iterable of faces may be passed; it is
    reduced to its inclusion-maximal members.
    """

    def __init__(self, facets: Iterable[Iterable[str]] = ()):
        fs = _maximal(frozenset(str(v) for v in f) for f in facets)
        self.facets: frozenset = fs
        self.vertices: tuple[str, ...] = tuple(sort_labels(set().union(*fs))) if fs else ()

    @classmethod
    def void(cls) -> SimplicialComplex:
        return cls()

    @classmethod
    def empty_face(cls) -> SimplicialComplex:
        """The complex {∅}: no vertices, one (empty) facet."""
        return cls([()])

    @classmethod
    def simplex(cls, vertices: Iterable[str]) -> SimplicialComplex:
        return cls([tuple(vertices)])

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex({self.sorted_facets()})"

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def sorted_facets(self) -> list[list[str]]:
        return sorted((sort_labels(f) for f in self.facets),
                      key=lambda f: [label_key(v) for v in f])

    def key(self) -> tuple:
        """Canonical hashable form of the labelled facet set."""
        return tuple(tuple(f) for f in self.sorted_facets())

    @property
    def is_void(self) -> bool:
        return not self.facets

    def is_simplex(self) -> bool:
        return len(self.facets) == 1

    def dimension(self) -> float:
        """Largest facet size minus one; ``-inf`` for the void complex."""
        if not self.facets:
            return -math.inf
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def _require_face(self, sigma) -> frozenset:
        sigma = frozenset(str(v) for v in sigma)
        if sigma not in self:
            raise ValidationError(f"{sorted(sigma)} is not a face")
        return sigma

    def link(self, sigma: Iterable[str]) -> SimplicialComplex:
        sigma = self._require_face(sigma)
        return SimplicialComplex(f - sigma for f in self.facets if sigma <= f)

    def deletion(self, sigma: Iterable[str]) -> SimplicialComplex:
        """Faces not containing ``sigma``; vertices left in no facet are dropped."""
        sigma = self._require_face(sigma)
        faces = []
        for f in self.facets:
            if sigma <= f:
                faces.extend(f - {v} for v in sigma)
            else:
                faces.append(f)
        return SimplicialComplex(faces)

    def faces(self) -> set[frozenset]:
        """Every face, the empty one included (exponential in facet size)."""
        return {frozenset(v for i, v in enumerate(self.vertices) if m >> i & 1)
                for m in _face_masks(self)}

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": self.sorted_facets()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> SimplicialComplex:
        try:
            facets = data["facets"]
            vertices = data.get("vertices", [])
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError(f"malformed complex JSON: {exc}") from exc
        c = cls(facets)
        if set(vertices) != set(c.vertices):
            raise ValidationError("vertex list disagrees with facets")
        return c


def join_complex(delta: SimplicialComplex, gamma: SimplicialComplex) -> SimplicialComplex:
    if set(delta.vertices) & set(gamma.vertices):
        raise ValidationError("join needs disjoint vertex sets")
    return SimplicialComplex(f | g for f in delta.facets for g in gamma.facets)


def cone(apex: str, gamma: SimplicialComplex) -> SimplicialComplex:
    if apex in gamma.vertices:
        raise ValidationError(f"apex {apex!r} is already a vertex")
    return join_complex(SimplicialComplex.simplex([apex]), gamma)


@dataclass(frozen=True)
class FHVector:
    """Face numbers ``f = (f_-1, f_0, ...)`` and, for pure complexes, the h-vector."""

    f: tuple[int, ...]
    h_values: tuple[int, ...] | None

    @property
    def h(self) -> tuple[int, ...]:
        if self.h_values is None:
            raise ValidationError("h-vector is only defined here for pure complexes")
        return self.h_values

    def euler_characteristic(self) -> int:
        """Alternating sum over nonempty faces."""
        return sum((-1) ** i * x for i, x in enumerate(self.f[1:]))


def h_from_f(f: tuple[int, ...]) -> tuple[int, ...]:
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * math.comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1))


def f_vector(delta: SimplicialComplex) -> FHVector:
    if delta.is_void:
        return FHVector((0,), (0,))
    counts: dict[int, int] = {}
    for face in _face_masks(delta):
        n = face.bit_count()
        counts[n] = counts.get(n, 0) + 1
    top = max(counts)
    f = tuple(counts.get(i, 0) for i in range(top + 1))
    return FHVector(f, h_from_f(f) if delta.is_pure() else None)


def _face_masks(delta: SimplicialComplex) -> set[int]:
    index = {v: i for i, v in enumerate(delta.vertices)}
    out: set[int] = set()
    for f in delta.facets:
        m = 0
        for v in f:
            m |= 1 << index[v]
        if m in out:
            continue
        sub = m
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return out


def minimal_nonfaces(delta: SimplicialComplex) -> list[frozenset]:
    """Inclusion-minimal vertex sets that are not faces.

    Non-edges are the size-two ones; larger ones are cliques of the
    1-skeleton, so candidates are grown only through common neighbours.
    """
    verts = delta.vertices
    n = len(verts)
    faces = _face_masks(delta)
    nbr = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and (1 << i | 1 << j) in faces:
                nbr[i] |= 1 << j
    found: list[int] = []
    for i in range(n):
        for j in range(i + 1, n):
            if not nbr[i] >> j & 1:
                found.append(1 << i | 1 << j)

    def grow(s: int, cand: int) -> None:
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            t = s | low
            if t in faces:
                grow(t, cand & nbr[v])
            elif all((t ^ (1 << u)) in faces for u in range(n) if t >> u & 1):
                found.append(t)

    for i in range(n):
        higher = nbr[i] & ~((1 << (i + 1)) - 1)
        grow(1 << i, higher)
    out = [frozenset(verts[i] for i in range(n) if t >> i & 1)
           for t in found if t.bit_count() >= 2]
    return sorted(set(out), key=lambda s: (len(s), sort_labels(s)))


def is_flag(delta: SimplicialComplex) -> bool:
    return all(len(s) == 2 for s in minimal_nonfaces(delta))


def order_complex(h: HasseDiagram) -> SimplicialComplex:
    """Facets are the maximal chains, labelled by comma-joined entries."""
    if len(h) == 0:
        return SimplicialComplex.empty_face()
    return SimplicialComplex([h.label(i) for i in chain]
                             for chain in h.maximal_chains())


def bs_order_complex(bounds: BSBounds) -> SimplicialComplex:
    return order_complex(HasseDiagram.from_bounds(bounds))


def downset_upset_split(bounds: BSBounds, d) -> tuple[SimplicialComplex, SimplicialComplex]:
    """Order complexes of the elements strictly below and strictly above ``d``.

    An empty side is the complex ``{∅}``, the order complex of the empty
    poset, so that the link of ``d`` is always the join of the two.
    """
    d = bounds.require(d)
    h = HasseDiagram.from_bounds(bounds)
    i = h.index[d]
    below = [x for j, x in enumerate(h.elements) if j != i and h.le(j, i)]
    above = [x for j, x in enumerate(h.elements) if j != i and h.le(i, j)]
    return order_complex(h.induced(below)), order_complex(h.induced(above))


def vertex_label(d) -> str:
    return seq_label(d)
