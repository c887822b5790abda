"""Per-slab discriminant graphs: maximal triangulations of the section
polygons, their dual trivalent graphs, global assembly and SVG export."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .degeneration import ROLE_BOUNDARY, ROLE_SPINE, DegenerationData, DegenerationError
from .polytope import Polygon, dot, vsub


@dataclass
class UnimodularTriangulation:
    polygon: Polygon
    points: list                      # all lattice points used
    triangles: list                   # index triples into points

    def count(self):
        return len(self.triangles)


def max_triangulation(polygon: Polygon) -> UnimodularTriangulation:
    """Full lattice triangulation into unimodular triangles.

    Deterministic: fan from the lex-least vertex, then insert the remaining
    lattice points in lex order, splitting the containing triangle (or the
    two triangles along the containing edge).
    """
    pts = sorted(polygon.lattice_points())
    verts = list(polygon.vertices)
    v0 = min(verts)
    k = verts.index(v0)
    ordered = verts[k:] + verts[:k]
    tris = []
    idx = {p: i for i, p in enumerate(pts)}
    for t in range(1, len(ordered) - 1):
        tris.append((idx[v0], idx[ordered[t]], idx[ordered[t + 1]]))

    def tri_two_area(t):
        a, b, c = (pts[i] for i in t)
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    def inside(p, t):
        a, b, c = (pts[i] for i in t)
        s1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        s2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
        s3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
        return (s1 >= 0 and s2 >= 0 and s3 >= 0) or \
               (s1 <= 0 and s2 <= 0 and s3 <= 0)

    def on_edge(p, a, b):
        ab, ap = vsub(b, a), vsub(p, a)
        if ab[0] * ap[1] - ab[1] * ap[0] != 0:
            return False
        d = ab[0] * ap[0] + ab[1] * ap[1]
        return 0 < d < ab[0] ** 2 + ab[1] ** 2

    used = {i for t in tris for i in t}
    for pi, p in enumerate(pts):
        if pi in used:
            continue
        # split along a containing edge first, else split a triangle
        host_edge = None
        for ti, t in enumerate(tris):
            for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                if on_edge(p, pts[e[0]], pts[e[1]]):
                    host_edge = e
                    break
            if host_edge:
                break
        if host_edge:
            a, b = host_edge
            new = []
            for t in tris:
                es = {frozenset((t[0], t[1])), frozenset((t[1], t[2])),
                      frozenset((t[2], t[0]))}
                if frozenset((a, b)) in es:
                    c = next(x for x in t if x not in (a, b))
                    new.append(tuple(sorted((a, pi, c))))
                    new.append(tuple(sorted((pi, b, c))))
                else:
                    new.append(t)
            tris = new
        else:
            host = next(ti for ti, t in enumerate(tris) if inside(p, t))
            a, b, c = tris[host]
            tris = (tris[:host] + tris[host + 1:]
                    + [tuple(sorted((a, b, pi))), tuple(sorted((b, c, pi))),
                       tuple(sorted((a, c, pi)))])
        used.add(pi)
    tris = sorted(tris)
    for t in tris:
        if tri_two_area(t) != 1:
            raise DegenerationError("triangulation produced a non-unimodular "
                                    "triangle")
    return UnimodularTriangulation(polygon, pts, tris)


# ---------------------------------------------------------------------------
# graphs


@dataclass
class Node:
    ident: str
    kind: str       # "negative" | "positive" | "boundary"
    slab: str
    pos: tuple


@dataclass
class DiscriminantGraph:
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)

    def census(self):
        p = sum(1 for v in self.nodes if v.kind == "positive")
        n = sum(1 for v in self.nodes if v.kind == "negative")
        b = sum(1 for v in self.nodes if v.kind == "boundary")
        return p, n, b

    def to_dict(self):
        return {
            "nodes": [{"id": v.ident, "kind": v.kind, "slab": v.slab,
                       "pos": [str(x) for x in v.pos]} for v in self.nodes],
            "edges": sorted(self.edges),
        }


def _tri_centroid(pts, t):
    xs = [Fraction(pts[i][0]) for i in t]
    ys = [Fraction(pts[i][1]) for i in t]
    return (sum(xs) / 3, sum(ys) / 3)


def dual_graph(data: DegenerationData, slab) -> tuple:
    """Dual-graph piece of one slab: trivalent interior vertices plus stubs
    keyed by the polygon edge they exit through.

    Returns (graph, stubs) where stubs maps a slab edge index to the ordered
    list of stub node ids on that edge.
    """
    if slab.sections.dim < 2:
        graph = DiscriminantGraph()
        # degenerate sections: a_v parallel strands from side to side
        ell = 0
        if slab.sections.dim == 1:
            a, b = slab.sections.points[0], slab.sections.points[-1]
            from .polytope import lattice_length
            ell = lattice_length(a, b)
        stubs = {}
        normals = [n for n, _ in slab.polygon.edge_normals()]
        sides = [i for i, s in enumerate(slab.spans) if s > 0]
        for i in sides:
            ids = []
            for k in range(slab.spans[i]):
                ident = f"{slab.name}/stub{i}.{k}"
                graph.nodes.append(Node(ident, "boundary" if
                                        slab.roles[i] == ROLE_BOUNDARY else
                                        "stub", slab.name, (k, i)))
                ids.append(ident)
            stubs[i] = ids
        # connect strand k across the two sides
        if len(sides) == 2 and ell:
            for k in range(ell):
                graph.edges.append((stubs[sides[0]][k], stubs[sides[1]][k]))
        return graph, stubs

    tri = max_triangulation(slab.sections.polygon)
    graph = DiscriminantGraph()
    names = {}
    for ti, t in enumerate(tri.triangles):
        ident = f"{slab.name}/n{ti}"
        names[t] = ident
        graph.nodes.append(Node(ident, "negative", slab.name,
                                _tri_centroid(tri.points, t)))
    edge_tris = {}
    for t in tri.triangles:
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            edge_tris.setdefault(frozenset(e), []).append(t)
    for key, ts in sorted(edge_tris.items(), key=lambda kv: sorted(kv[0])):
        if len(ts) == 2:
            graph.edges.append(tuple(sorted((names[ts[0]], names[ts[1]])))),
    # boundary stubs: unit segments of the section polygon boundary, mapped
    # to the slab edge whose support line they lie on
    normals = [n for n, _ in slab.polygon.edge_normals()]
    stubs = {i: [] for i in range(len(normals))}
    counter = 0
    for key, ts in sorted(edge_tris.items(), key=lambda kv: sorted(kv[0])):
        if len(ts) != 1:
            continue
        t = ts[0]
        a, b = (tri.points[i] for i in key)
        owner_edge = None
        for i, n in enumerate(normals):
            lvl = -slab.coeffs[i]
            if dot(n, a) == lvl and dot(n, b) == lvl:
                owner_edge = i
                break
        if owner_edge is None:
            raise DegenerationError("boundary segment on no support line")
        mid = ((Fraction(a[0]) + b[0]) / 2, (Fraction(a[1]) + b[1]) / 2)
        ident = f"{slab.name}/s{counter}"
        counter += 1
        kind = ("boundary" if slab.roles[owner_edge] == ROLE_BOUNDARY
                else "stub")
        graph.nodes.append(Node(ident, kind, slab.name, mid))
        graph.edges.append(tuple(sorted((names[t], ident))))
        stubs[owner_edge].append(ident)
    for ids in stubs.values():
        ids.sort()
    got = {i: len(v) for i, v in stubs.items() if v}
    want = {i: s for i, s in enumerate(slab.spans) if s}
    if got != want:
        raise DegenerationError("compatibility violated: stub counts do not "
                                "match section edge spans")
    return graph, stubs


def assemble_global(data: DegenerationData) -> DiscriminantGraph:
    """Glue the per-slab pieces: one positive trivalent node per triangle
    summand, pass-through strands per segment summand."""
    total = DiscriminantGraph()
    slab_stubs = {}
    for slab in data.slabs:
        piece, stubs = dual_graph(data, slab)
        total.nodes.extend(piece.nodes)
        total.edges.extend(piece.edges)
        ray_pools = {}
        for i, role in enumerate(slab.roles):
            if role == ROLE_BOUNDARY or not stubs.get(i):
                continue
            ray_pools.setdefault(role, []).extend(stubs[i])
        slab_stubs[slab.name] = ray_pools
    for si, rs in enumerate(data.ray_summands):
        if rs.kind == "point":
            continue
        mine = []
        for sname in rs.slabs:
            pools = slab_stubs[sname]
            pool = pools.get(f"ray:{rs.ray}") or pools.get(ROLE_SPINE)
            if not pool:
                raise DegenerationError("compatibility violated: missing "
                                        f"stub for {rs.ray} in {sname}")
            mine.append(pool.pop(0))
        if rs.kind == "triangle":
            ident = f"p{si}/{rs.ray}"
            total.nodes.append(Node(ident, "positive", rs.ray, (0, 0)))
            for stub in mine:
                total.edges.append(tuple(sorted((ident, stub))))
        else:
            total.edges.append(tuple(sorted(mine)))
    leftovers = [v for pools in slab_stubs.values()
                 for ids in pools.values() for v in ids]
    if leftovers:
        raise DegenerationError("compatibility violated: unconsumed stubs "
                                f"{leftovers}")
    p, n, _ = total.census()
    if p != data.p_count or n != data.n_count:
        raise DegenerationError("graph census disagrees with slab arithmetic")
    return total


# ---------------------------------------------------------------------------
# rendering


_COLORS = {"negative": "#d62728", "positive": "#1f77b4",
           "boundary": "#2ca02c", "stub": "#999999"}


def render_svg(data: DegenerationData, graph: DiscriminantGraph | None = None) -> str:
    """Deterministic schematic drawing: slabs side by side in their section
    coordinates, positive nodes in a strip underneath."""
    if graph is None:
        graph = assemble_global(data)
    scale = 36
    pad = 40
    offsets = {}
    x_cursor = pad
    heights = []
    for slab in data.slabs:
        xs = [Fraction(p[0]) for p in slab.sections.vertices()]
        ys = [Fraction(p[1]) for p in slab.sections.vertices()]
        w = float(max(xs) - min(xs)) * scale + 2 * pad
        offsets[slab.name] = (x_cursor - float(min(xs)) * scale,
                              pad - float(min(ys)) * scale)
        heights.append(float(max(ys) - min(ys)) * scale + 2 * pad)
        x_cursor += w
    height = max(heights) + 80 if heights else 200
    width = x_cursor + pad

    def place(node):
        if node.kind == "positive":
            i = sum(1 for v in graph.nodes[:graph.nodes.index(node)]
                    if v.kind == "positive")
            return 40.0 + 30.0 * i, height - 30.0
        ox, oy = offsets.get(node.slab, (pad, pad))
        return (ox + float(node.pos[0]) * scale,
                oy + float(node.pos[1]) * scale)

    pos = {v.ident: place(v) for v in graph.nodes}
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
             f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">']
    for a, b in sorted(graph.edges):
        (x1, y1), (x2, y2) = pos[a], pos[b]
        parts.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" '
                     f'y2="{y2:.1f}" stroke="#555" stroke-width="1"/>')
    for v in graph.nodes:
        x, y = pos[v.ident]
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" '
                     f'fill="{_COLORS.get(v.kind, "#000")}"><title>'
                     f'{v.ident}</title></circle>')
    parts.append("</svg>")
    return "\n".join(parts)


def export_json(graph: DiscriminantGraph) -> dict:
    return graph.to_dict()
