import random
from fractions import Fraction

import pytest

from conftest import bundled, random_unimodular2
from fanoscope.linalg import mat_vec
from fanoscope.polytope import (LatticePolytope, Polygon, PolytopeError,
                                convex_hull, embed_polygon, gorenstein_index,
                                identity24, pick_area)


def test_hull_p3_simplex():
    p = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])
    assert len(p.vertices) == 4
    assert len(p.edges) == 6
    assert len(p.facets) == 4


def test_hull_discards_interior():
    pts = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    p = convex_hull(pts + [(0, 0, 0)])
    assert len(p.vertices) == 8


def test_hull_octahedron():
    p = bundled("octahedron")
    assert len(p.vertices) == 6
    assert len(p.edges) == 12
    assert len(p.facets) == 8


def test_hull_degenerate():
    with pytest.raises(PolytopeError, match="not full-dimensional"):
        convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_polar_dual_p3():
    p = bundled("p3")
    d = p.polar_dual()
    assert sorted(d.vertices) == [(-1, -1, -1), (-1, -1, 3), (-1, 3, -1),
                                  (3, -1, -1)]


def test_polar_dual_octahedron_cube():
    octa = bundled("octahedron")
    cube = octa.polar_dual()
    assert sorted(cube.vertices) == sorted(
        (x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1))


def test_polar_dual_b1_rational():
    b1 = LatticePolytope([(0, 0, 1), (-1, -1, -1), (-1, 5, -1), (5, -1, -1)])
    d = b1.polar_dual()
    assert (Fraction(-1, 2), Fraction(-1, 2), -1) in d.vertices


def test_polar_requires_interior_origin():
    shifted = LatticePolytope([(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)])
    with pytest.raises(PolytopeError, match="origin"):
        shifted.polar_dual()


def test_reflexive_flags():
    assert bundled("p3").is_reflexive()
    v2 = bundled("v2")
    assert v2.is_fano() and not v2.is_reflexive()


def test_involution_on_reflexives():
    for name in ("p3", "cube", "octahedron", "b3_cubic", "q3_quadric"):
        p = bundled(name)
        assert sorted(p.polar_dual().polar_dual().vertices) == \
            sorted(p.vertices)


def test_dual_face_dimensions():
    p = bundled("p3")
    # vertex -> facet (3 dual vertices), edge -> edge (2), facet -> vertex (1)
    assert len(p.dual_face_vertices([0])) == 3
    e = p.edges[0]
    assert len(p.dual_face_vertices(sorted(e.vertex_ids))) == 2
    f = p.facets[0]
    assert len(p.dual_face_vertices(sorted(f.vertex_ids))) == 1


def test_dual_edge_of_p3_has_length_four():
    p = bundled("p3")
    e1 = p.vertices.index((0, 1, 0))
    e2 = p.vertices.index((0, 0, 1))
    edge = next(e for e in p.edges if e.vertex_ids == frozenset((e1, e2)))
    assert p.dual_edge_length(edge) == 4


def test_lattice_point_counts():
    d = bundled("p3").polar_dual()
    assert d.point_counts() == (35, 1, 34)
    d3 = bundled("b3_cubic").polar_dual()
    assert d3.point_counts()[0] == 15
    v2dual3 = bundled("v2").polar_dual().dilate(3)
    assert v2dual3.point_counts()[2] == 11
    assert v2dual3.boundary_area() == 18


def test_reflexive_dual_has_single_interior_point():
    for name in ("p3", "cube", "octahedron", "q3_quadric"):
        d = bundled(name).polar_dual()
        assert d.point_counts()[1] == 1


def test_gorenstein_examples():
    assert gorenstein_index([(2, -1), (-1, 2)]) == 1
    assert gorenstein_index([(1, 1), (-1, 1)]) == 1
    assert gorenstein_index([(0, 2), (1, 2)]) == 2
    assert gorenstein_index([(1, 0, 3), (-1, 0, 3)]) == 3
    assert gorenstein_index([(0, 0, 1)]) == 1
    assert gorenstein_index([(5, -1, -1), (-1, 5, -1), (-1, -1, 5)]) == 3
    with pytest.raises(PolytopeError, match="strictly convex"):
        gorenstein_index([(1, 0), (-1, 0)])


def test_reflexive_facets_have_index_one():
    p = bundled("p3")
    for f in p.facets:
        assert gorenstein_index([p.vertices[i] for i in f.cycle]) == 1


def test_pick_examples():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    assert pick_area(tri) == 1
    big = tri.dilate(3)
    assert pick_area(big) == 9
    assert big.point_counts() == (10, 1, 9)
    slab = Polygon([(0, 0), (6, 0), (0, 2)])
    assert pick_area(slab) == 12
    assert slab.point_counts()[1] == 2


def test_pick_matches_shoelace_random():
    rng = random.Random(3)
    done = 0
    while done < 1000:
        pts = [(rng.randrange(-4, 5), rng.randrange(-4, 5)) for _ in range(6)]
        try:
            poly = Polygon(pts)
        except PolytopeError:
            continue
        assert pick_area(poly) == poly.two_area()
        done += 1


def test_pick_embedded_in_3d():
    poly, _, _ = embed_polygon([(0, 0, 0), (2, 0, 2), (0, 3, 0), (2, 3, 2)])
    assert pick_area(poly) == 12  # 2 x 3 rectangle in its own lattice


def test_identity24():
    assert identity24(bundled("p3")) == 24
    assert identity24(bundled("cube")) == 24
    assert identity24(bundled("octahedron")) == 24
    with pytest.raises(PolytopeError, match="reflexive"):
        identity24(bundled("v2"))


def test_polygon_invariance_under_gl2():
    rng = random.Random(9)
    hexagon = Polygon([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
    for _ in range(10):
        m = random_unimodular2(rng)
        im = Polygon([tuple(mat_vec(m, list(v))) for v in hexagon.vertices])
        assert im.point_counts() == hexagon.point_counts()
        assert abs(im.two_area()) == hexagon.two_area()
