"""Numerical invariants of the torus-fibration model attached to
degeneration data: Euler number, anti-canonical degree, Betti numbers and
the Fano index."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .degeneration import DegenerationData, DegenerationError
from .gamma import b2 as gamma_b2, barT_hypothesis, barT_sections
from .linalg import index_in_saturation, kernel_basis, primitive, snf
from .polytope import LatticePolytope, cross, dot


class InvariantError(DegenerationError):
    pass


# ---------------------------------------------------------------------------
# Euler number


def euler_number(data: DegenerationData) -> int:
    """Euler number, computed by both available formulas.

    Formula A: 2 sum_s (1 - i_s) - 2|J| + V(B).
    Formula B (node census): p - n + |Delta . boundary| + V(B).
    A disagreement means invalid data or a bug and raises.
    """
    e_slab = (2 * sum(1 - s.i_count for s in data.slabs)
              - 2 * data.j_count + data.vertex_count)
    e_node = (data.p_count - data.n_count + data.boundary_count
              + data.vertex_count)
    if e_slab != e_node:
        raise InvariantError(f"formula mismatch: {e_slab} != {e_node}")
    if e_slab % 2:
        raise InvariantError(f"odd Euler number {e_slab}: invalid data")
    return e_slab


def euler_smooth_mink(data: DegenerationData) -> int:
    """Closed form for method-1 data: 24 + T - sum l(E) l(E*)^2."""
    if data.kind != "normal_fan" or data.dual is None:
        raise InvariantError("closed form only applies to method-1 data")
    dual = data.dual
    total = 0
    for e in dual.edges:
        total += dual.edge_length(e) * dual.dual_edge_length(e) ** 2
    return 24 + data.p_count - total


def euler_product(data: DegenerationData) -> int:
    """Product construction: e = 2 * sum a_v = 2 e(dP_d) with d = 12 - sum."""
    if data.kind != "product":
        raise InvariantError("not product data")
    return 2 * sum(data.notes["a_values"])


# ---------------------------------------------------------------------------
# degree


def degree(p: LatticePolytope) -> int:
    """Anti-canonical degree 2|P* . M| - 6 for reflexive P, cross-checked
    against the normalized boundary area; dilation route otherwise."""
    if not p.is_fano():
        raise InvariantError("degree needs a Fano polytope")
    dual = p.polar_dual()
    if p.is_reflexive():
        total, _, _ = dual.point_counts()
        deg = 2 * total - 6
        if deg != dual.boundary_area():
            raise InvariantError("degree cross-check failed")
        return deg
    k = 1
    for v in dual.vertices:
        for x in v:
            k = k * Fraction(x).denominator // gcd(k, Fraction(x).denominator)
    scaled = dual.dilate(k)
    area = scaled.boundary_area()
    if area % (k * k):
        raise InvariantError("dilated boundary area is not divisible by k^2")
    return area // (k * k)


def b3_from(e: int, b2: int) -> int:
    """b3 = 2 + 2 b2 - e; must be a non-negative even integer."""
    b3 = 2 + 2 * b2 - e
    if b3 < 0 or b3 % 2:
        raise InvariantError(f"inconsistent invariants: b3 = {b3}")
    return b3


def p1c1_expected(deg: int) -> int:
    return deg - 48


# ---------------------------------------------------------------------------
# Fano index


def _cell_class_data(dual: LatticePolytope, facet):
    """Divisibility of the base divisor of the cone cell over a facet of the
    polar polytope, measured in the free part of the cell's class group."""
    rays = [facet.normal]
    cyc = list(facet.cycle)
    k = len(cyc)
    interior = [Fraction(sum(dual.vertices[i][j] for i in cyc), k)
                for j in range(3)]
    for t in range(k):
        a = dual.vertices[cyc[t]]
        b = dual.vertices[cyc[(t + 1) % k]]
        m = primitive(cross(a, b))
        if dot(m, interior) < 0:
            m = tuple(-x for x in m)
        rays.append(m)
    nrays = len(rays)
    relations = [[rays[j][i] for j in range(nrays)] for i in range(3)]
    s, _, v = snf(relations)
    r = sum(1 for i in range(min(len(s), nrays)) if s[i][i] != 0)
    # class of the base divisor = image of the first basis vector; free
    # coordinates live past the first r slots of x * V
    y = v[0]
    free = y[r:]
    g = 0
    for x in free:
        g = gcd(g, abs(x))
    if g == 0:
        raise InvariantError("base divisor class is torsion in a cell")
    return g


def fano_index(data: DegenerationData, known_b2: int | None = None) -> int:
    """Divisibility index of the boundary class in second cohomology.

    One integer coordinate per maximal cell (cone over a facet of the polar
    polytope), glued along walls; returns the saturation index of the
    boundary tuple in the kernel.  Only valid for rank-one data.
    """
    if data.boundary_components is not None:
        deg = analyze_degree(data)
        k = data.boundary_components
        if deg != k ** 3:
            raise InvariantError("cannot determine the index from boundary "
                                 "components")
        return k
    if data.kind != "normal_fan" or data.dual is None:
        raise InvariantError("not rank one: index computed only on "
                             "normal-fan data")
    b2v = known_b2 if known_b2 is not None else gamma_b2(data)
    if b2v != 1:
        raise InvariantError("not rank one")
    dual = data.dual
    d_values = [_cell_class_data(dual, f) for f in dual.facets]
    nf = len(dual.facets)
    rows = []
    for e in dual.edges:
        f1, f2 = sorted(e.facet_ids)
        row = [0] * nf
        row[f1] = d_values[f2]
        row[f2] = -d_values[f1]
        rows.append(row)
    kernel = kernel_basis(rows)
    if len(kernel) != 1:
        raise InvariantError("not rank one")
    denom = 1
    for x in kernel[0]:
        denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    gen = [int(Fraction(x) * denom) for x in kernel[0]]
    return index_in_saturation(d_values, [gen])


def analyze_degree(data: DegenerationData) -> int:
    if data.polytope is not None:
        return degree(data.polytope)
    if data.degree_fixture is not None:
        return data.degree_fixture
    raise InvariantError("no degree source available")


# ---------------------------------------------------------------------------
# report


@dataclass
class InvariantReport:
    name: str
    degree: int
    p: int
    n: int
    d_segments: int
    boundary_count: int
    vertex_count: int
    euler: int
    b2: int | None
    b3: int | None
    fano_index: int | None
    p1c1: int
    provenance: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "name": self.name,
            "degree": self.degree,
            "p": self.p,
            "n": self.n,
            "segments": self.d_segments,
            "boundary_points": self.boundary_count,
            "vertex_count": self.vertex_count,
            "euler": self.euler,
            "p1c1": self.p1c1,
            "provenance": dict(sorted(self.provenance.items())),
        }
        if self.b2 is not None:
            out["b2"] = self.b2
            out["b3"] = self.b3
        if self.fano_index is not None:
            out["index"] = self.fano_index
        return out


def analyze(data: DegenerationData) -> InvariantReport:
    """Full invariant report for validated degeneration data."""
    data.validate()
    prov = {}
    e = euler_number(data)
    prov["euler"] = "slab formula + node census"
    is_method1 = (data.kind == "normal_fan" and data.polytope is not None
                  and data.polytope.is_reflexive()
                  and all(data.edge_values.get(i, 0) == data.dual.dual_edge_length(ed)
                          for i, ed in enumerate(data.dual.edges)))
    if is_method1:
        closed = euler_smooth_mink(data)
        if closed != e:
            raise InvariantError(f"formula mismatch: closed form {closed} != {e}")
        prov["euler"] += " + closed form"
    if data.kind == "product":
        closed = euler_product(data)
        if closed != e:
            raise InvariantError(f"formula mismatch: product form {closed} != {e}")
        prov["euler"] += " + product form"
    deg = analyze_degree(data)
    prov["degree"] = ("2|P*.M| - 6" if data.polytope is not None
                      and data.polytope.is_reflexive() else
                      "dilated boundary area" if data.polytope is not None
                      else "source: paper")

    b2v = None
    if data.kind == "normal_fan":
        b2v = gamma_b2(data)
        prov["b2"] = "dim Gamma - 2"
        if barT_hypothesis(data):
            fast = barT_sections(data) - 2
            if fast != b2v:
                raise InvariantError("fast-path b2 disagrees with the limit")
            prov["b2"] += " (fast path agrees)"
    elif data.kind == "product":
        b2v = 11 - data.notes["base_degree"]
        prov["b2"] = "product closed form"
    elif data.b2_fixture is not None:
        b2v = data.b2_fixture
        prov["b2"] = f"source: {data.b2_source or 'fixture'}"

    b3v = b3_from(e, b2v) if b2v is not None else None

    idx = None
    if data.boundary_components is not None:
        idx = fano_index(data)
        prov["index"] = "homologous boundary components"
    elif data.kind == "normal_fan" and b2v == 1:
        idx = fano_index(data, known_b2=b2v)
        prov["index"] = "H^2 gluing kernel"

    return InvariantReport(
        name=data.name,
        degree=deg,
        p=data.p_count,
        n=data.n_count,
        d_segments=data.d_count,
        boundary_count=data.boundary_count,
        vertex_count=data.vertex_count,
        euler=e,
        b2=b2v,
        b3=b3v,
        fano_index=idx,
        p1c1=p1c1_expected(deg),
        provenance=prov,
    )
