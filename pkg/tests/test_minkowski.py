import random

from conftest import random_unimodular2
from fanoscope.linalg import mat_vec
from fanoscope.minkowski import (POINT, enumerate_smooth_decompositions,
                                 minkowski_sum, segment, triangle)
from fanoscope.polytope import Polygon

HEXAGON = Polygon([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
TRIANGLE = Polygon([(0, 0), (1, 0), (0, 1)])


def test_edge_vector_multisets():
    assert SQUARE.edge_vector_multiset() == sorted(
        [(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert HEXAGON.edge_vector_multiset() == sorted(
        [(0, 1), (-1, 0), (-1, -1), (0, -1), (1, 0), (1, 1)])
    two = TRIANGLE.dilate(2)
    assert two.edge_vector_multiset() == sorted(
        [(1, 0), (1, 0), (-1, 1), (-1, 1), (0, -1), (0, -1)])


def test_hexagon_has_exactly_two():
    decos = enumerate_smooth_decompositions(HEXAGON)
    assert len(decos) == 2
    by_triangles = {sum(1 for s in d if s.kind == "triangle"): d for d in decos}
    assert set(by_triangles) == {0, 2}
    segs = by_triangles[0]
    assert sorted(s.vectors[0] for s in segs) == [(0, 1), (1, 0), (1, 1)]
    tris = by_triangles[2]
    assert all(s.kind == "triangle" for s in tris)


def test_square_and_triangle_unique():
    assert len(enumerate_smooth_decompositions(SQUARE)) == 1
    decos = enumerate_smooth_decompositions(TRIANGLE)
    assert len(decos) == 1 and decos[0][0].kind == "triangle"


def test_side_two_square_is_four_segments():
    decos = enumerate_smooth_decompositions(SQUARE.dilate(2))
    assert len(decos) == 1
    assert [s.kind for s in decos[0]] == ["segment"] * 4


def test_minkowski_sum_examples():
    assert minkowski_sum([segment((1, 0)), segment((0, 1))]) == SQUARE
    t = triangle((1, 0), (-1, 1), (0, -1))
    assert minkowski_sum([t] * 6) == TRIANGLE.dilate(6)
    for deco in enumerate_smooth_decompositions(HEXAGON):
        assert minkowski_sum(deco) == HEXAGON.normalized()


def test_point_summand_is_identity():
    t = triangle((1, 0), (-1, 1), (0, -1))
    assert minkowski_sum([t, POINT]) == minkowski_sum([t])


def test_no_decomposition():
    poly = Polygon([(0, 0), (2, 1), (1, 2)])  # area-3 empty triangle
    assert enumerate_smooth_decompositions(poly) == []


def test_count_invariant_under_gl2():
    rng = random.Random(17)
    for poly in (HEXAGON, SQUARE.dilate(2), TRIANGLE.dilate(3)):
        base = len(enumerate_smooth_decompositions(poly))
        for _ in range(6):
            m = random_unimodular2(rng)
            im = Polygon([tuple(mat_vec(m, list(v))) for v in poly.vertices])
            assert len(enumerate_smooth_decompositions(im)) == base


def test_summand_face_lengths():
    t = triangle((1, 0), (-1, 1), (0, -1))
    assert sorted(t.edge_normals()) == sorted([(0, 1), (-1, -1), (1, 0)])
    assert t.face_length((0, 1)) == 1
    assert t.face_length((1, 2)) == 0  # generic functional hits a vertex
    s = segment((1, 0))
    assert s.face_length((0, 1)) == 1
    assert s.face_length((0, -1)) == 1
    assert s.face_length((1, 0)) == 0
