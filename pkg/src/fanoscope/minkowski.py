"""Smooth Minkowski decompositions of lattice polygons.

A decomposition is smooth when every summand is a standard simplex: a point,
a primitive segment, or a triangle of normalized area one.  Summands are
encoded by their ccw edge-vector multisets and enumerated by exhaustive
backtracking over the polygon's boundary word.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .linalg import lex_positive
from .polytope import Polygon, PolytopeError, vadd


@dataclass(frozen=True, order=True)
class Summand:
    kind: str                 # "point" | "segment" | "triangle"
    vectors: tuple            # () | (v,) | (v1, v2, v3) with v1+v2+v3 = 0

    def __post_init__(self):
        if self.kind == "point":
            assert self.vectors == ()
        elif self.kind == "segment":
            assert len(self.vectors) == 1
        elif self.kind == "triangle":
            v1, v2, v3 = self.vectors
            assert tuple(map(sum, zip(v1, v2, v3))) == (0, 0)
            assert abs(v1[0] * v2[1] - v1[1] * v2[0]) == 1
        else:
            raise ValueError(f"unknown summand kind {self.kind!r}")

    @property
    def dim(self):
        return {"point": 0, "segment": 1, "triangle": 2}[self.kind]

    def polygon_vertices(self):
        """Vertices of the summand, translated so lex-min sits at 0."""
        if self.kind == "point":
            return [(0, 0)]
        if self.kind == "segment":
            return sorted([(0, 0), self.vectors[0]])
        v1, v2, _ = self.vectors
        pts = [(0, 0), v1, vadd(v1, v2)]
        m = min(pts)
        return sorted(tuple(a - b for a, b in zip(p, m)) for p in pts)

    def edge_normals(self):
        """Inner-normal rays of the summand's normal fan, primitive."""
        if self.kind == "point":
            return []
        if self.kind == "segment":
            v = self.vectors[0]
            return [(-v[1], v[0]), (v[1], -v[0])]
        return [(-v[1], v[0]) for v in self.vectors]

    def face_length(self, functional) -> int:
        """Lattice length of the face minimizing the functional (0 at a
        vertex)."""
        if self.kind == "point":
            return 0
        pts = self.polygon_vertices()
        vals = [functional[0] * p[0] + functional[1] * p[1] for p in pts]
        lo = min(vals)
        face = [p for p, val in zip(pts, vals) if val == lo]
        if len(face) == 1:
            return 0
        (x1, y1), (x2, y2) = min(face), max(face)
        from math import gcd
        return gcd(abs(x2 - x1), abs(y2 - y1))


def segment(v) -> Summand:
    return Summand("segment", (lex_positive(v),))


def triangle(v1, v2, v3) -> Summand:
    """Canonical triangle summand: ccw edge cycle rotated to lex-min start."""
    vs = [tuple(v1), tuple(v2), tuple(v3)]
    d = vs[0][0] * vs[1][1] - vs[0][1] * vs[1][0]
    if d < 0:
        vs = [vs[0], vs[2], vs[1]]  # reorder the same vectors into a ccw cycle
    k = min(range(3), key=lambda i: vs[i])
    return Summand("triangle", tuple(vs[k:] + vs[:k]))


POINT = Summand("point", ())


def edge_vector_multiset(polygon: Polygon):
    """ccw boundary word of a lattice polygon (sorted)."""
    return polygon.edge_vector_multiset()


def minkowski_sum(summands):
    """Minkowski sum of summands as a translation-normalized polygon or, when
    degenerate, the sorted vertex list of the sum."""
    pts = [(0, 0)]
    for s in summands:
        pts = [vadd(p, q) for p in pts for q in s.polygon_vertices()]
        pts = sorted(set(pts))
    m = min(pts)
    pts = [tuple(a - b for a, b in zip(p, m)) for p in pts]
    try:
        return Polygon(pts)
    except PolytopeError:
        return sorted(set(pts))


def enumerate_smooth_decompositions(polygon: Polygon):
    """All partitions of the boundary word into segments {v,-v} and unimodular
    zero-sum triples, deduplicated as multisets of summands.

    Returns a sorted list of tuples of Summands; empty when no smooth
    decomposition exists.
    """
    if not polygon.is_integral:
        raise PolytopeError("decompositions of a non-integral polygon")
    word = Counter(polygon.edge_vector_multiset())
    found = set()

    def rec(counter, acc):
        if not counter:
            found.add(tuple(sorted(acc)))
            return
        v = min(counter)
        rest = counter.copy()
        rest[v] -= 1
        if not rest[v]:
            del rest[v]
        neg = tuple(-x for x in v)
        # segment {v, -v}
        if rest.get(neg):
            nxt = rest.copy()
            nxt[neg] -= 1
            if not nxt[neg]:
                del nxt[neg]
            rec(nxt, acc + [segment(v)])
        # triangles {v, w, -v-w}
        tried = set()
        for w in list(rest):
            third = (-v[0] - w[0], -v[1] - w[1])
            key = frozenset((w, third))
            if key in tried:
                continue
            tried.add(key)
            if abs(v[0] * w[1] - v[1] * w[0]) != 1:
                continue
            nxt = rest.copy()
            if w == third:
                if nxt[w] < 2:
                    continue
                nxt[w] -= 2
            else:
                if not nxt.get(third):
                    continue
                nxt[w] -= 1
                nxt[third] -= 1
            for k in (w, third):
                if k in nxt and not nxt[k]:
                    del nxt[k]
            rec(nxt, acc + [triangle(v, w, third)])

    rec(word, [])
    out = []
    target = polygon.normalized()
    for deco in sorted(found, key=lambda d: (sum(1 for s in d if s.dim == 2), d)):
        if minkowski_sum(deco) != target:
            raise PolytopeError("enumerated decomposition fails to re-sum")
        out.append(deco)
    return out
