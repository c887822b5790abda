"""The limit of the quotient-space functor over the ray-data diagram.

For normal-fan data the system has one scalar unknown per 2-cone (the value
against the canonical primitive annihilator of its plane) plus one auxiliary
covector per two-dimensional summand; its solution space computes the second
Betti number of the fibration as dim Gamma - 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .degeneration import DegenerationData, DegenerationError, _edge_name
from .linalg import lex_positive, nullity, primitive
from .polytope import dot


class GammaError(DegenerationError):
    pass


@dataclass
class GammaSystem:
    rows: list                 # equations over alpha_0..alpha_{k-1}, aux...
    n_alpha: int
    n_aux: int                 # 3 per 2-dim summand
    triangles: int
    nu: list                   # canonical annihilator per 2-cone
    cone_names: list


def _annihilators(data: DegenerationData):
    dual = data.polytope.polar_dual() if data.dual is None else data.dual
    nus = []
    for e in dual.edges:
        a, b = (dual.vertices[i] for i in sorted(e.vertex_ids))
        from .polytope import cross
        nus.append(lex_positive(primitive(cross(a, b))))
    return dual, nus


def build_system(data: DegenerationData) -> GammaSystem:
    """Linear system whose solutions are the limit elements.

    Segment summands identify the two scalars on their (coplanar) cones;
    triangle summands tie three scalars to a single auxiliary covector.
    """
    if data.kind != "normal_fan":
        raise GammaError("the Betti formula needs a complete normal fan "
                         "(0-dimensional minimal cone)")
    dual, nus = _annihilators(data)
    edge_index = {_edge_name(i): i for i in range(len(dual.edges))}
    n_alpha = len(dual.edges)
    rows = []
    aux_base = n_alpha
    triangles = 0
    for rs in data.ray_summands:
        if rs.kind == "point":
            continue
        cones = [edge_index[s] for s in rs.slabs]
        if rs.kind == "segment":
            c1, c2 = cones
            if nus[c1] == nus[c2]:
                eps = 1
            elif nus[c1] == tuple(-x for x in nus[c2]):
                eps = -1
            else:
                raise GammaError("segment cones are not coplanar: corrupted "
                                 "data")
            row = [Fraction(0)] * (n_alpha)
            row[c1] = Fraction(eps)
            row[c2] = Fraction(-1)
            rows.append(row)
        else:
            triangles += 1
            for c in cones:
                row = [Fraction(0)] * n_alpha
                row[c] = Fraction(-1)
                rows.append(row + [Fraction(x) for x in nus[c]])
            aux_base += 3
    # pad each triangle's three rows into its own auxiliary 3-block
    padded = []
    tri_seen = 0
    row_iter = iter(rows)
    for row in row_iter:
        if len(row) == n_alpha:
            padded.append(row + [Fraction(0)] * (3 * triangles))
        else:
            for r in (row, next(row_iter), next(row_iter)):
                left = r[:n_alpha]
                block = r[n_alpha:]
                pre = [Fraction(0)] * (3 * tri_seen)
                post = [Fraction(0)] * (3 * (triangles - tri_seen - 1))
                padded.append(left + pre + block + post)
            tri_seen += 1
    return GammaSystem(padded, n_alpha, 3 * triangles, triangles, nus,
                       [_edge_name(i) for i in range(n_alpha)])


def baseline_ok(system: GammaSystem, seed=7) -> bool:
    """The 3-dimensional torus baseline alpha_sigma = <m, nu_sigma> must
    satisfy every equation (with aux = m for each triangle)."""
    rng = random.Random(seed)
    for _ in range(3):
        m = tuple(Fraction(rng.randrange(-9, 10)) for _ in range(3))
        alphas = [Fraction(dot(m, nu)) for nu in system.nu]
        vec = alphas + list(m) * system.triangles
        for row in system.rows:
            if sum(r * v for r, v in zip(row, vec)) != 0:
                return False
    return True


def gamma_dimension(data: DegenerationData) -> int:
    system = build_system(data)
    if not baseline_ok(system):
        raise GammaError("baseline missing: the torus subspace fails the "
                         "equations")
    dim = nullity(system.rows) if system.rows else (system.n_alpha + system.n_aux)
    out = dim - system.triangles
    if out < 3:
        raise GammaError(f"dim Gamma = {out} < 3")
    return out


def b2(data: DegenerationData) -> int:
    return gamma_dimension(data) - 2


# ---------------------------------------------------------------------------
# fast path through the constructible system on the one-skeleton


_ALLOWED_PATTERNS = {
    (1, 1, 1),            # P^2
    (0, 0, 0, 0),         # P^1 x P^1
    (1, 0, -1, 0),        # F_1 (Hirzebruch)
    (-1, -1, -1, 0, 0),   # dP_7
}


def _cyclic_variants(seq):
    seq = list(seq)
    out = set()
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            out.add(tuple(s[i:] + s[:i]))
    return out


def _fan_pattern(polygon):
    """Self-intersection sequence of the smooth complete fan normal to a
    polygon; None when the fan is singular."""
    rays = [n for n, _ in polygon.edge_normals()]
    k = len(rays)
    pattern = []
    for i in range(k):
        a, b, c = rays[(i - 1) % k], rays[i], rays[(i + 1) % k]
        if abs(b[0] * c[1] - b[1] * c[0]) != 1:
            return None
        # a + c = -(D^2) b
        lam = None
        for idx in range(2):
            if b[idx]:
                lam = Fraction(a[idx] + c[idx], b[idx])
        if lam is None or lam.denominator != 1:
            return None
        if a[0] + c[0] != lam * b[0] or a[1] + c[1] != lam * b[1]:
            return None
        pattern.append(-int(lam))
    return tuple(pattern)


def barT_hypothesis(data: DegenerationData):
    """Every facet of P must have normal fan among P^2, P^1xP^1, F_1, dP_7."""
    p = data.polytope
    for f in p.facets:
        poly, _, _ = p.facet_polygon(f)
        pat = _fan_pattern(poly)
        if pat is None:
            return False
        if not any(v in _ALLOWED_PATTERNS for v in _cyclic_variants(pat)):
            return False
    return True


def barT_sections(data: DegenerationData) -> int:
    """Dimension of the global sections of the quotient system on the
    one-skeleton of the polar polytope; equals dim Gamma when the facet
    hypothesis holds."""
    if data.kind != "normal_fan":
        raise GammaError("fast path needs a complete normal fan")
    if not barT_hypothesis(data):
        raise GammaError("fast path inapplicable")
    dual, nus = _annihilators(data)
    n_alpha = len(dual.edges)
    n_rays = len(dual.vertices)
    width = n_alpha + 3 * n_rays
    rows = []
    for vid in range(n_rays):
        for i, e in enumerate(dual.edges):
            if vid not in e.vertex_ids:
                continue
            row = [Fraction(0)] * width
            row[i] = Fraction(-1)
            for k in range(3):
                row[n_alpha + 3 * vid + k] = Fraction(nus[i][k])
            rows.append(row)
    return nullity(rows) - n_rays
