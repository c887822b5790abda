"""Degeneration data on Fano 3-polytopes: fans, edge/ray data, slabs, checks.

A slab is a codimension-one cell c of the decomposition of the polar polytope
by a generalized fan, together with divisor coefficients on its edges.  All
node counting is driven by the slab's polygon of sections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linalg import kernel_basis, lex_positive, primitive, saturate, solve_in_span
from .minkowski import Summand, enumerate_smooth_decompositions, minkowski_sum
from .polytope import (LatticePolytope, Polygon, PolytopeError, dot,
                       gorenstein_index, is_integral, lattice_length,
                       pick_area, vsub, _frac)


class DegenerationError(ValueError):
    pass


class NotNef(DegenerationError):
    pass


class NotCartier(DegenerationError):
    pass


class EmptyLinearSystem(DegenerationError):
    pass


# ---------------------------------------------------------------------------
# polygon of sections


class Sections:
    """Solution set {m : <m, n_i> >= -a_i}; a polygon, segment or point."""

    def __init__(self, points):
        pts = sorted(set(points))
        self.points = tuple(pts)
        if len(pts) >= 3:
            try:
                self.polygon = Polygon(pts)
                self.dim = 2
                return
            except PolytopeError:
                pass
        self.polygon = None
        self.dim = 1 if len(pts) >= 2 else 0

    def vertices(self):
        if self.dim == 2:
            return self.polygon.vertices
        return self.points

    def face_span(self, n) -> int:
        """Lattice length of the face minimizing <., n> (0 at a vertex)."""
        vals = [dot(n, p) for p in self.vertices()]
        lo = min(vals)
        face = [p for p, v in zip(self.vertices(), vals) if v == lo]
        if len(face) == 1:
            return 0
        a, b = min(face), max(face)
        return lattice_length(a, b)

    def support_min(self, n):
        return min(dot(n, p) for p in self.vertices())

    def two_area(self) -> int:
        if self.dim < 2:
            return 0
        return pick_area(self.polygon)

    def counts(self):
        """(two_area, b, i) with the degenerate-slab convention b = both-sided
        boundary length and i solved from Pick."""
        two_a = self.two_area()
        if self.dim == 2:
            _, i, b = self.polygon.point_counts()
            return two_a, b, i
        if self.dim == 1:
            ell = lattice_length(self.points[0], self.points[-1])
            return 0, 2 * ell, 1 - ell
        return 0, 0, 1


def polygon_of_sections(normals, coeffs) -> Sections:
    """Exact half-plane intersection of <m, n_i> >= -a_i with nef / Cartier /
    basepoint-freeness checks.

    normals: ccw-ordered primitive inner normals of the slab polygon.
    coeffs:  divisor coefficients per edge (same order).
    """
    k = len(normals)
    cands = set()
    for i in range(k):
        for j in range(i + 1, k):
            (a, b), (c, d) = normals[i], normals[j]
            det = a * d - b * c
            if det == 0:
                continue
            rx = Fraction(-coeffs[i] * d + coeffs[j] * b, det)
            ry = Fraction(-coeffs[j] * a + coeffs[i] * c, det)
            if all(n[0] * rx + n[1] * ry >= -q for n, q in zip(normals, coeffs)):
                cands.add((rx, ry))
    if not cands:
        raise EmptyLinearSystem("empty linear system")
    pts = []
    for (x, y) in cands:
        pts.append((int(x) if x.denominator == 1 else x,
                    int(y) if y.denominator == 1 else y))
    sec = Sections(pts)
    for n, q in zip(normals, coeffs):
        if sec.support_min(n) != -q:
            raise NotNef(f"divisor not nef: slack on edge with normal {n}")
    # Cartier / basepoint-free: the joint minimum on each vertex cone of the
    # slab polygon must be attained at a lattice point.
    for i in range(k):
        j = (i + 1) % k
        tight = [p for p in sec.vertices()
                 if dot(normals[i], p) == -coeffs[i]
                 and dot(normals[j], p) == -coeffs[j]]
        if not tight:
            raise NotNef("divisor not nef: support function breaks on a "
                         "vertex cone")
        if not any(is_integral(p) for p in tight):
            raise NotCartier("not Cartier: no integral section witness at a "
                             "vertex cone")
    return sec


# ---------------------------------------------------------------------------
# slabs

ROLE_BOUNDARY = "boundary"
ROLE_SPINE = "spine"


@dataclass
class Slab:
    name: str
    polygon: Polygon
    coeffs: tuple
    roles: tuple
    sections: Sections = field(init=False)
    spans: tuple = field(init=False)
    two_area: int = field(init=False)
    b_count: int = field(init=False)
    i_count: int = field(init=False)

    def __post_init__(self):
        normals = [n for n, _ in self.polygon.edge_normals()]
        self.sections = polygon_of_sections(normals, list(self.coeffs))
        self.spans = tuple(self.sections.face_span(n) for n in normals)
        self.two_area, b_conv, i_conv = self.sections.counts()
        span_sum = sum(self.spans)
        if self.sections.dim == 2 and span_sum != b_conv:
            raise DegenerationError("section polygon spans do not add to its "
                                    "boundary count")
        self.b_count = span_sum
        self.i_count = (self.two_area + 2 - self.b_count) // 2
        if (self.two_area + 2 - self.b_count) % 2:
            raise DegenerationError("odd Pick defect in slab sections")

    @property
    def boundary_points(self) -> int:
        return sum(s for s, r in zip(self.spans, self.roles)
                   if r == ROLE_BOUNDARY)

    def ray_spans(self) -> dict:
        out = {}
        for s, r in zip(self.spans, self.roles):
            if r == ROLE_SPINE or r.startswith("ray:"):
                out[r] = out.get(r, 0) + s
        return out


# ---------------------------------------------------------------------------
# generalized fans


@dataclass
class GeneralizedFan:
    kind: str            # "normal" | "line"
    direction: tuple | None = None   # minimal-cone line direction (line fans)
    rays2d: tuple = ()               # 3-space generators of the 2-cones mod L

    @property
    def minimal_dim(self):
        return 1 if self.kind == "line" else 0


def normal_fan(p: LatticePolytope) -> GeneralizedFan:
    if not p.is_fano():
        raise DegenerationError("normal fan wants a Fano polytope")
    return GeneralizedFan("normal")


def line_fan(direction, rays2d) -> GeneralizedFan:
    d = primitive(direction)
    rays = [primitive(r) for r in rays2d]
    if len(rays) < 3:
        raise DegenerationError("line fan needs a complete quotient fan")
    return GeneralizedFan("line", d, tuple(tuple(r) for r in rays))


@dataclass
class RaySummand:
    ray: str
    kind: str                     # point | segment | triangle
    slabs: tuple = ()
    summand: Summand | None = None


# ---------------------------------------------------------------------------
# degeneration data


@dataclass
class DegenerationData:
    name: str
    kind: str                          # normal_fan | line_fan | product | slabs
    slabs: list
    ray_summands: list                 # RaySummand entries (points included)
    polytope: LatticePolytope | None = None
    dual: LatticePolytope | None = None
    vertex_count: int = 0
    edge_values: dict = field(default_factory=dict)
    b2_fixture: int | None = None
    b2_source: str = ""
    degree_fixture: int | None = None
    boundary_components: int | None = None
    choice: tuple = ()
    notes: dict = field(default_factory=dict)

    # -- node census ---------------------------------------------------------

    @property
    def p_count(self) -> int:
        return sum(1 for s in self.ray_summands if s.kind == "triangle")

    @property
    def d_count(self) -> int:
        return sum(1 for s in self.ray_summands if s.kind == "segment")

    @property
    def j_count(self) -> int:
        return self.p_count + self.d_count

    @property
    def n_count(self) -> int:
        return sum(s.two_area for s in self.slabs)

    @property
    def boundary_count(self) -> int:
        return sum(s.boundary_points for s in self.slabs)

    def validate(self):
        """Run the structural cross-checks; raises DegenerationError."""
        total_ray = sum(sum(s.ray_spans().values()) for s in self.slabs)
        if total_ray != 3 * self.p_count + 2 * self.d_count:
            raise DegenerationError(
                "ray-side endpoints do not match 3p + 2d "
                f"({total_ray} != {3 * self.p_count + 2 * self.d_count})")
        # per-slab per-ray attachment counts
        for slab in self.slabs:
            expect = {}
            for rs in self.ray_summands:
                if slab.name in rs.slabs:
                    key = f"ray:{rs.ray}"
                    expect[key] = expect.get(key, 0) + 1
            got = slab.ray_spans()
            spine = got.pop(ROLE_SPINE, 0)
            for key, cnt in expect.items():
                if key in got:
                    if got[key] != cnt:
                        raise DegenerationError(
                            f"slab {slab.name}: edge span {got[key]} != "
                            f"{cnt} attachments for {key}")
                    del got[key]
                    expect[key] = 0
            spine_expect = sum(v for v in expect.values())
            if spine != spine_expect:
                raise DegenerationError(
                    f"slab {slab.name}: spine span {spine} != "
                    f"{spine_expect} attachments")
            if any(got.values()):
                raise DegenerationError(
                    f"slab {slab.name}: unattached ray edges {got}")
        return True


# ---------------------------------------------------------------------------
# geometric construction helpers


def _plane_basis(span_vectors):
    """Saturated basis of the rank-2 sublattice spanned by the vectors."""
    denom = 1
    fr = [[Fraction(x) for x in v] for v in span_vectors]
    for v in fr:
        for x in v:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    rows = [[int(x * denom) for x in v] for v in fr if any(v)]
    basis = saturate(rows)
    if len(basis) != 2:
        raise DegenerationError("vectors do not span a plane")
    return [tuple(b) for b in basis]


def _coords_in(basis, vec):
    sol = solve_in_span([list(b) for b in basis], list(vec))
    if sol is None:
        raise DegenerationError("point outside its plane")
    return tuple(int(x) if x.denominator == 1 else x for x in sol)


def _ann_functional(plane_basis_vectors):
    """Primitive annihilator of a plane in the dual lattice, lex-positive."""
    rows = [[Fraction(x) for x in v] for v in plane_basis_vectors]
    ker = kernel_basis(rows)
    if len(ker) != 1:
        raise DegenerationError("expected a rank-2 plane")
    return lex_positive(primitive(ker[0]))


def ray_lattice(dir3):
    """Basis of W = ann(primitive direction) in the opposite lattice, plus
    the W-coordinate map; deterministic."""
    u = primitive(dir3)
    ker = kernel_basis([list(u)])
    denom = 1
    for v in ker:
        for x in v:
            denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    rows = [[int(Fraction(x) * denom) for x in v] for v in ker]
    basis = saturate(rows)
    if len(basis) != 2:
        raise DegenerationError("direction annihilator is not a plane")
    return [tuple(b) for b in basis]


def facet_in_ray_coords(p_dual: LatticePolytope, vertex_id: int,
                        w_basis) -> Polygon:
    """Dual facet of a vertex of the polar polytope, written in W-coords and
    translation-normalized."""
    verts = p_dual.dual_face_vertices([vertex_id])
    base = verts[0]
    coords = [_coords_in(w_basis, vsub(v, base)) for v in verts]
    return Polygon(coords).normalized()


def quotient_functional(w_basis, m_point):
    """Functional on W induced by pairing with a point of the dual space."""
    f = (dot(m_point, w_basis[0]), dot(m_point, w_basis[1]))
    return primitive(f)


def match_summand_slabs(summand: Summand, slab_functionals: dict):
    """Slab names whose quotient direction supports an edge of the summand.

    slab_functionals: slab name -> primitive functional on W.
    Raises when a summand edge direction matches no slab.
    """
    hits = []
    for name, f in slab_functionals.items():
        if summand.face_length(f) >= 1:
            hits.append(name)
    need = {"point": 0, "segment": 2, "triangle": 3}[summand.kind]
    if len(hits) != need:
        raise DegenerationError(
            f"unmatched summand direction: {summand} met {hits}")
    return tuple(sorted(hits))


# ---------------------------------------------------------------------------
# method 1: smooth Minkowski decompositions on a normal fan


def _edge_name(i: int) -> str:
    return f"E{i}"


def _ray_name(i: int) -> str:
    return f"v{i}"


def normal_fan_data(p: LatticePolytope, edge_values=None, choice=None,
                    name="", ray_decompositions=None) -> DegenerationData:
    """Degeneration data with the normal fan of P.

    edge_values: None (use l(E*)), an int (constant), or a dict keyed by the
    dual-polytope edge index.  choice: per-ray decomposition indices.
    ray_decompositions: optional explicit {ray index: [Summand, ...]}.
    """
    if not p.is_fano():
        raise DegenerationError("P is not a Fano polytope")
    dual = p.polar_dual()
    values = {}
    for i, e in enumerate(dual.edges):
        ell_dual = dual.dual_edge_length(e)
        if edge_values is None:
            values[i] = ell_dual
        elif isinstance(edge_values, int):
            values[i] = edge_values
        else:
            values[i] = edge_values.get(i, 0)

    slabs = []
    for i, e in enumerate(dual.edges):
        a_id, b_id = sorted(e.vertex_ids)
        va, vb = dual.vertices[a_id], dual.vertices[b_id]
        basis = _plane_basis([va, vb])
        origin = (0, 0)
        ca, cb = _coords_in(basis, va), _coords_in(basis, vb)
        poly = Polygon([origin, ca, cb])
        coeffs, roles = [], []
        for x, y in poly.edges():
            pair = {x, y}
            if pair == {ca, cb}:
                coeffs.append(values[i])
                roles.append(ROLE_BOUNDARY)
            elif ca in pair:
                coeffs.append(0)
                roles.append(f"ray:{_ray_name(a_id)}")
            else:
                coeffs.append(0)
                roles.append(f"ray:{_ray_name(b_id)}")
        slabs.append(Slab(_edge_name(i), poly, tuple(coeffs), tuple(roles)))

    ray_summands = []
    chosen = []
    for vid, vert in enumerate(dual.vertices):
        w_basis = ray_lattice(vert)
        facet = facet_in_ray_coords(dual, vid, w_basis)
        r = gorenstein_index(dual.dual_face_vertices([vid]))
        target = facet
        if r > 1:
            scaled = []
            for v in facet.vertices:
                if any(Fraction(x, r).denominator != 1 for x in v):
                    raise DegenerationError(
                        f"no smooth Minkowski decomposition: facet of ray "
                        f"{vid} is not divisible by its index {r}")
                scaled.append(tuple(x // r for x in v))
            target = Polygon(scaled)
        if ray_decompositions and vid in ray_decompositions:
            deco = tuple(ray_decompositions[vid])
        else:
            decos = enumerate_smooth_decompositions(target)
            if not decos:
                raise DegenerationError(
                    f"no smooth Minkowski decomposition for the facet dual "
                    f"to vertex {vid}")
            idx = 0
            if choice is not None:
                idx = choice[vid] if not isinstance(choice, dict) else choice.get(vid, 0)
            if idx >= len(decos):
                raise DegenerationError(
                    f"decomposition index {idx} out of range for vertex {vid}")
            deco = decos[idx]
            chosen.append(idx)
        # quotient functionals of the 2-cones at this ray
        functionals = {}
        for i, e in enumerate(dual.edges):
            if vid in e.vertex_ids:
                other = next(x for x in e.vertex_ids if x != vid)
                functionals[_edge_name(i)] = quotient_functional(
                    w_basis, dual.vertices[other])
        check = minkowski_sum([s for s in deco if s.kind != "point"])
        if isinstance(check, Polygon) and check != target.normalized():
            raise DegenerationError("ray data does not re-sum to its facet")
        for s in deco:
            if s.kind == "point":
                ray_summands.append(RaySummand(_ray_name(vid), "point"))
                continue
            hits = match_summand_slabs(s, functionals)
            ray_summands.append(
                RaySummand(_ray_name(vid), s.kind, hits, s))

    data = DegenerationData(
        name=name or "normal-fan data",
        kind="normal_fan",
        slabs=slabs,
        ray_summands=ray_summands,
        polytope=p,
        dual=dual,
        vertex_count=0,
        edge_values=values,
        choice=tuple(chosen),
    )
    return data


def method1_data(p: LatticePolytope, choice=None, name="") -> DegenerationData:
    """Construction from smooth Minkowski decompositions: Sigma the normal
    fan, a_E = l(E*), J the chosen facet decompositions."""
    if not p.is_reflexive():
        raise DegenerationError("method 1 needs a reflexive polytope")
    dual = p.polar_dual()
    for e in dual.edges:
        r = gorenstein_index(dual.dual_face_vertices(sorted(e.vertex_ids)))
        if r != 1:
            raise DegenerationError("method 1 assumes r(E*) = 1 on dual edges")
    return normal_fan_data(p, None, choice, name or "method-1 data")


def decomposition_regimes(p: LatticePolytope):
    """All decomposition choices per ray: list of lists of Summand tuples."""
    dual = p.polar_dual()
    out = []
    for vid, vert in enumerate(dual.vertices):
        w_basis = ray_lattice(vert)
        facet = facet_in_ray_coords(dual, vid, w_basis)
        out.append(enumerate_smooth_decompositions(facet))
    return out


# ---------------------------------------------------------------------------
# line fans (complete-intersection style data) and products


def line_fan_data(p: LatticePolytope, direction, rays2d, edge_rule,
                  name="", ray_summand_spec="auto") -> DegenerationData:
    """Degeneration data whose fan has a one-dimensional minimal cone.

    edge_rule: {"meets": point, "value": a} entries; an edge of the polar
    polytope lying in a 2-cone gets the value when it contains the point.
    """
    if not p.is_fano():
        raise DegenerationError("P is not a Fano polytope")
    dual = p.polar_dual()
    fan = line_fan(direction, rays2d)
    dirv = fan.direction
    w_basis = ray_lattice(dirv)

    def edge_value(pa, pb):
        for rule in edge_rule:
            target = _frac(rule["meets"])
            if _on_segment(target, pa, pb):
                return int(rule["value"])
        return 0

    # the spine: P^dual intersected with the minimal line
    t_hi = _exit_parameter(dual, dirv)
    t_lo = _exit_parameter(dual, tuple(-x for x in dirv))

    def _side_functional(basis, w):
        dir2 = _coords_in(basis, dirv)
        w2 = _coords_in(basis, w)
        f = primitive((-dir2[1], dir2[0]))
        if dot(f, w2) < 0:
            f = tuple(-x for x in f)
        return f

    slabs = []
    slab_functionals = {}
    for k, w in enumerate(fan.rays2d):
        basis = _plane_basis([dirv, w])
        nu = _ann_functional(basis)
        side = _side_functional(basis, w)  # cuts out the w-halfplane
        pts = _plane_slice(dual, nu)
        coords = [_coords_in(basis, pt) for pt in pts]
        clipped = _clip_halfplane(coords, side)
        poly = Polygon(clipped)
        coeffs, roles = [], []
        for a, b in poly.edges():
            a3 = _unproject(basis, a)
            b3 = _unproject(basis, b)
            if _along_line(a3, dirv) and _along_line(b3, dirv):
                coeffs.append(0)
                roles.append(ROLE_SPINE)
                continue
            eidx = _containing_edge(dual, a3, b3)
            if eidx is not None:
                ea, eb = (dual.vertices[i] for i in sorted(dual.edges[eidx].vertex_ids))
                coeffs.append(edge_value(ea, eb))
            else:
                coeffs.append(0)
            roles.append(ROLE_BOUNDARY)
        sname = f"S{k}"
        slabs.append(Slab(sname, poly, tuple(coeffs), tuple(roles)))
        slab_functionals[sname] = quotient_functional(w_basis, w)

    ray_summands = []
    for ray_id, tpar, rdir in (("rho_plus", t_hi, dirv),
                               ("rho_minus", t_lo, tuple(-x for x in dirv))):
        hit = tuple(tpar * Fraction(x) for x in rdir)
        tight = [f for f in dual.facets if dot(f.normal, hit) == f.level]
        vertex_hit = None
        for vid, v in enumerate(dual.vertices):
            if _frac(v) == _frac(hit):
                vertex_hit = vid
        if vertex_hit is None:
            if len(tight) != 1:
                raise DegenerationError(
                    f"{ray_id}: the ray leaves through a face of unsupported "
                    "dimension")
            ray_summands.append(RaySummand(ray_id, "point"))
            continue
        spec = ray_summand_spec
        if isinstance(spec, dict):
            spec = ray_summand_spec.get(ray_id, "auto")
        if spec == "auto":
            facet_pts = dual.dual_face_vertices([vertex_hit])
            r = gorenstein_index(facet_pts)
            base = facet_pts[0]
            coords = [_coords_in(w_basis, vsub(v, base)) for v in facet_pts]
            facet = Polygon(coords).normalized()
            target = facet
            if r > 1:
                target = Polygon([tuple(x // r if x % r == 0 else Fraction(x, r)
                                        for x in v)
                                  for v in facet.vertices])
                if not target.is_integral:
                    raise DegenerationError(
                        "ray facet not divisible by its Gorenstein index")
            decos = enumerate_smooth_decompositions(target)
            if not decos:
                raise DegenerationError("no smooth Minkowski decomposition "
                                        f"for {ray_id}")
            deco = decos[-1]  # prefer the triangle-rich canonical choice
        else:
            deco = tuple(spec)
        for s in deco:
            if s.kind == "point":
                ray_summands.append(RaySummand(ray_id, "point"))
            else:
                hits = match_summand_slabs(s, slab_functionals)
                ray_summands.append(RaySummand(ray_id, s.kind, hits, s))

    # vertices of the polar polytope in no 2-cone keep their corner
    v_count = 0
    for v in dual.vertices:
        if _along_line(v, dirv):
            continue
        in_two_cone = False
        for w in fan.rays2d:
            basis = _plane_basis([dirv, w])
            nu = _ann_functional(basis)
            if dot(nu, v) == 0:
                side = _side_functional(basis, w)
                if dot(side, _coords_in(basis, v)) >= 0:
                    in_two_cone = True
                    break
        if not in_two_cone:
            v_count += 1

    edge_values = {}
    for i, e in enumerate(dual.edges):
        ea, eb = (dual.vertices[j] for j in sorted(e.vertex_ids))
        edge_values[i] = edge_value(ea, eb)

    data = DegenerationData(
        name=name or "line-fan data",
        kind="line_fan",
        slabs=slabs,
        ray_summands=ray_summands,
        polytope=p,
        dual=dual,
        vertex_count=v_count,
        edge_values=edge_values,
    )
    data.notes["fan"] = fan
    return data


def product_data(q: Polygon, name="") -> DegenerationData:
    """Product construction from a reflexive base polygon Q: the polar
    polytope is Q x [-1, 1], vertical edges labeled l(v*)."""
    if not q.is_integral:
        raise DegenerationError("base polygon must be integral")
    qdualverts = _polygon_polar(q)
    if not all(is_integral(v) for v in qdualverts):
        raise DegenerationError("base polygon must be reflexive "
                                "(r(v*) = 1 everywhere)")
    p = LatticePolytope([(v[0], v[1], 0) for v in qdualverts]
                        + [(0, 0, 1), (0, 0, -1)])
    rules = []
    for v in q.vertices:
        a_v = _dual_edge_length(q, v, qdualverts)
        rules.append({"meets": (v[0], v[1], 0), "value": a_v})
    data = line_fan_data(p, (0, 0, 1), [(v[0], v[1], 0) for v in q.vertices],
                         rules, name=name or "product data")
    data.kind = "product"
    data.notes["base_degree"] = 12 - sum(r["value"] for r in rules)
    data.notes["a_values"] = [r["value"] for r in rules]
    return data


def _polygon_polar(q: Polygon):
    verts = []
    for n, c in q.edge_normals():
        if c >= 0:
            raise DegenerationError("origin not interior to the base polygon")
        verts.append(tuple(Fraction(x, -c) for x in n))
    return [tuple(int(x) if x.denominator == 1 else x for x in v) for v in verts]


def _dual_edge_length(q: Polygon, v, qdualverts):
    """Length of the edge of the polar dual on which v evaluates to -1."""
    tight = [u for u in qdualverts if dot(u, v) == -1]
    if len(tight) != 2:
        raise DegenerationError("base polygon vertex without a dual edge")
    return lattice_length(tight[0], tight[1])


# -- small geometric helpers -------------------------------------------------


def _on_segment(p, a, b) -> bool:
    pa, ab = vsub(p, a), vsub(b, a)
    crossz = [pa[i] * ab[j] - pa[j] * ab[i] for i, j in ((0, 1), (0, 2), (1, 2))]
    if any(crossz):
        return False
    t = None
    for i in range(3):
        if ab[i]:
            t = Fraction(pa[i]) / Fraction(ab[i])
            break
    if t is None:
        return _frac(p) == _frac(a)
    return 0 <= t <= 1


def _along_line(p, dirv) -> bool:
    return all(p[i] * dirv[j] == p[j] * dirv[i]
               for i, j in ((0, 1), (0, 2), (1, 2)))


def _exit_parameter(poly: LatticePolytope, dirv):
    ts = []
    for f in poly.facets:
        pace = dot(f.normal, dirv)
        if pace < 0:
            ts.append(Fraction(f.level) / pace)
    if not ts:
        raise DegenerationError("line does not exit the polytope")
    return min(ts)


def _plane_slice(poly: LatticePolytope, nu):
    """Vertices of the section of a 3-polytope by the plane ann(nu)."""
    pts = set()
    for v in poly.vertices:
        if dot(nu, v) == 0:
            pts.add(_frac(v))
    for e in poly.edges:
        a, b = (poly.vertices[i] for i in sorted(e.vertex_ids))
        ga, gb = dot(nu, a), dot(nu, b)
        if ga * gb < 0:
            t = Fraction(ga) / (ga - gb)
            pts.add(tuple(Fraction(x) + t * (y - x) for x, y in zip(a, b)))
    if len(pts) < 3:
        raise DegenerationError("plane slice is degenerate")
    return sorted(pts)


def _clip_halfplane(coords, side):
    """Sutherland-Hodgman clip of a convex polygon to <., side> >= 0."""
    poly = Polygon(coords)
    vs = list(poly.vertices)
    out = []
    for i, a in enumerate(vs):
        b = vs[(i + 1) % len(vs)]
        da, db = dot(side, a), dot(side, b)
        if da >= 0:
            out.append(a)
        if (da > 0 > db) or (da < 0 < db):
            t = Fraction(da) / (da - db)
            out.append(tuple(Fraction(x) + t * (y - x) for x, y in zip(a, b)))
    if len(set(out)) < 3:
        raise DegenerationError("clipped slab is degenerate")
    return out


def _containing_edge(poly: LatticePolytope, a3, b3):
    for i, e in enumerate(poly.edges):
        ea, eb = (poly.vertices[j] for j in sorted(e.vertex_ids))
        if _on_segment(a3, ea, eb) and _on_segment(b3, ea, eb):
            return i
    return None


def _unproject(basis, coord2):
    return tuple(coord2[0] * b0 + coord2[1] * b1
                 for b0, b1 in zip(basis[0], basis[1]))


# ---------------------------------------------------------------------------
# validity checks on degeneration data


def check_convexity(data: DegenerationData):
    """a_E must sit in [0, l(E*)] on every labeled dual edge."""
    out = []
    if data.kind != "normal_fan" or data.dual is None:
        return out
    for i, e in enumerate(data.dual.edges):
        a = data.edge_values.get(i, 0)
        hi = data.dual.dual_edge_length(e)
        if not 0 <= a <= hi:
            out.append(f"edge {i}: a = {a} outside [0, {hi}]")
    return out


def check_smooth_edge_data(data: DegenerationData):
    """Smooth edge data means a_E in {l(E*) - 1, l(E*)}."""
    out = []
    if data.kind != "normal_fan" or data.dual is None:
        return out
    for i, e in enumerate(data.dual.edges):
        a = data.edge_values.get(i, 0)
        ell = data.dual.dual_edge_length(e)
        if a not in (ell - 1, ell):
            out.append(f"edge {i}: a = {a} not in {{{ell - 1}, {ell}}}")
    return out


def check_compatibility(data: DegenerationData):
    """Pullback degree of L_rho on each invariant curve must equal
    a_E / r(F*); reported per (ray, slab)."""
    out = []
    if data.kind != "normal_fan" or data.dual is None:
        return out
    dual = data.dual
    for vid, vert in enumerate(dual.vertices):
        r = gorenstein_index(dual.dual_face_vertices([vid]))
        summands = [s for s in data.ray_summands
                    if s.ray == _ray_name(vid) and s.kind != "point"]
        for i, e in enumerate(dual.edges):
            if vid not in e.vertex_ids:
                continue
            sname = _edge_name(i)
            got = sum(1 for s in summands if sname in s.slabs)
            a = data.edge_values.get(i, 0)
            if Fraction(a, r) != got:
                out.append(f"ray v{vid}, slab {sname}: degree {got} != "
                           f"a/r = {a}/{r}")
    return out


def _sv_remainder_ok(facet: Polygon, scaled: Polygon, r: int) -> bool:
    """True when facet = scaled + S_v for a standard simplex S_v; a
    nontrivial S_v additionally needs a Gorenstein cone (r = 1)."""
    word_f = facet.edge_vector_multiset()
    word_s = scaled.edge_vector_multiset()
    rest = list(word_f)
    for w in word_s:
        if w not in rest:
            return False
        rest.remove(w)
    if not rest:
        return False
    if r != 1:
        return False
    from .minkowski import segment as mk_segment, triangle as mk_triangle
    if len(rest) == 2:
        a, b = rest
        if tuple(-x for x in a) != tuple(b):
            return False
        extra = mk_segment(a)
    elif len(rest) == 3:
        a, b, c = rest
        if tuple(map(sum, zip(a, b, c))) != (0, 0):
            return False
        if abs(a[0] * b[1] - a[1] * b[0]) != 1:
            return False
        extra = mk_triangle(a, b, c)
    else:
        return False
    resum = minkowski_sum([_polygon_summand(scaled), extra])
    return isinstance(resum, Polygon) and resum == facet.normalized()


class _polygon_summand:
    """Adapter so an arbitrary polygon can enter a Minkowski sum."""

    def __init__(self, polygon: Polygon):
        self._polygon = polygon

    def polygon_vertices(self):
        return [tuple(v) for v in self._polygon.normalized().vertices]


def _d1_verdict(data, dual, ray_id, vertex, w_basis):
    summands = [s.summand for s in data.ray_summands
                if s.ray == ray_id and s.summand is not None]
    vid = next(i for i, v in enumerate(dual.vertices)
               if _frac(v) == _frac(vertex))
    facet = facet_in_ray_coords(dual, vid, w_basis)
    r = gorenstein_index(dual.dual_face_vertices([vid]))
    total = minkowski_sum(summands) if summands else None
    if total is None or not isinstance(total, Polygon):
        return "violation: ray carries no surface summands"
    scaled = Polygon([tuple(r * x for x in v) for v in total.vertices])
    if scaled == facet.normalized():
        return "smooth"  # S_v is a point
    if _sv_remainder_ok(facet, scaled, r):
        return "smooth"
    return "violation: v* != r P_L + S_v"


def _d2_verdict(data, dual, vid, t_dir):
    """Cayley condition at a vertex interior to a 2-cone: the dual facet is
    two parallel segments along ann(tau) with nearly equal labels."""
    facet_pts = dual.dual_face_vertices([vid])
    if gorenstein_index(facet_pts) != 1:
        return "violation: cone over v* is not Gorenstein"
    groups = {}
    for pt in facet_pts:
        key = tuple(pt[i] * t_dir[j] - pt[j] * t_dir[i]
                    for i, j in ((0, 1), (0, 2), (1, 2)))
        groups.setdefault(key, []).append(pt)
    if len(groups) != 2 or any(len(g) > 2 for g in groups.values()):
        return "violation: v* is not a Cayley sum of two segments"
    a_vals, lens = [], []
    for g in groups.values():
        if len(g) == 1:
            a_vals.append(0)
            lens.append(0)
            continue
        # the segment is the dual face of an edge of the polar polytope
        eidx = None
        for i, e in enumerate(dual.edges):
            if set(map(_frac, dual.dual_face_vertices(sorted(e.vertex_ids)))) \
                    == set(map(_frac, g)):
                eidx = i
                break
        a_vals.append(data.edge_values.get(eidx, 0) if eidx is not None else 0)
        try:
            lens.append(dual.edge_length(dual.edges[eidx])
                        if eidx is not None else 0)
        except PolytopeError:
            lens.append(0)
    if abs(a_vals[0] - a_vals[1]) > 1:
        return (f"violation: |a(F1*) - a(F2*)| = "
                f"{abs(a_vals[0] - a_vals[1])} > 1")
    if all(lens) and not any(a == ell for a, ell in zip(a_vals, lens)):
        return "violation: neither label equals its dual length"
    return "smooth"


def _d3_verdict(dual, vid):
    facet_pts = dual.dual_face_vertices([vid])
    if len(facet_pts) != 3:
        return "violation: cone over v* is not simplicial"
    from .linalg import det
    if abs(det([list(map(int, p)) for p in facet_pts])) != 1:
        return "violation: cone over v* is not smooth"
    return "corner"


def check_smooth_data(data: DegenerationData):
    """Vertex conditions for smooth degeneration data, classified by the
    dimension of the minimal fan cone containing each polar vertex."""
    verdicts = {}
    if data.dual is None:
        return verdicts
    dual = data.dual
    if data.kind == "normal_fan":
        for vid, vert in enumerate(dual.vertices):
            w_basis = ray_lattice(vert)
            verdicts[vid] = _d1_verdict(data, dual, _ray_name(vid), vert,
                                        w_basis)
        return verdicts
    if data.kind not in ("line_fan", "product"):
        return verdicts
    fan = data.notes.get("fan")
    if fan is None:
        return verdicts
    dirv = fan.direction
    w_basis = ray_lattice(dirv)
    for vid, vert in enumerate(dual.vertices):
        if _along_line(vert, dirv):
            ray_id = "rho_plus" if any(
                Fraction(a) * b > 0 for a, b in zip(vert, dirv)) \
                else "rho_minus"
            verdicts[vid] = _d1_verdict(data, dual, ray_id, vert, w_basis)
            continue
        hit = None
        for w in fan.rays2d:
            basis = _plane_basis([dirv, w])
            nu = _ann_functional(basis)
            if dot(nu, vert) == 0:
                dir2 = _coords_in(basis, dirv)
                side = primitive((-dir2[1], dir2[0]))
                if dot(side, _coords_in(basis, w)) < 0:
                    side = tuple(-x for x in side)
                if dot(side, _coords_in(basis, vert)) >= 0:
                    hit = nu
                    break
        if hit is not None:
            verdicts[vid] = _d2_verdict(data, dual, vid, hit)
        else:
            verdicts[vid] = _d3_verdict(dual, vid)
    return verdicts
