import random

from conftest import bundled, bundled_polygon
from fanoscope.degeneration import (line_fan_data, method1_data,
                                    normal_fan_data, product_data)
from fanoscope.discriminant import (assemble_global, dual_graph, export_json,
                                    max_triangulation, render_svg)
from fanoscope.polytope import Polygon, PolytopeError, pick_area


def test_triangulation_counts():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    assert max_triangulation(tri).count() == 1
    assert max_triangulation(tri.dilate(2)).count() == 4
    assert max_triangulation(Polygon([(0, 0), (4, 0), (0, 1)])).count() == 4


def test_triangulation_count_equals_area_random():
    rng = random.Random(31)
    done = 0
    while done < 60:
        pts = [(rng.randrange(-3, 4), rng.randrange(-3, 4)) for _ in range(5)]
        try:
            poly = Polygon(pts)
        except PolytopeError:
            continue
        tri = max_triangulation(poly)
        assert tri.count() == pick_area(poly)
        assert len(tri.points) == poly.point_counts()[0]
        done += 1


def test_p3_slab_graph():
    data = method1_data(bundled("p3"))
    piece, stubs = dual_graph(data, data.slabs[0])
    negatives = [v for v in piece.nodes if v.kind == "negative"]
    assert len(negatives) == 4
    # four boundary stubs on the far edge, one on each ray edge
    sizes = sorted(len(v) for v in stubs.values() if v)
    assert sizes == [1, 1, 4]


def test_global_census():
    cases = [
        (method1_data(bundled("p3")), (4, 24, 24)),
        (method1_data(bundled("octahedron")), (8, 24, 24)),
        (normal_fan_data(bundled("v2"), 6), (20, 144, 24)),
        (line_fan_data(bundled("b3_cubic"), (0, 0, 1),
                       [(1, 0, 0), (0, 1, 0), (-1, -1, 0)],
                       [{"meets": (0, 0, 1), "value": 3}]), (3, 27, 18)),
    ]
    for data, want in cases:
        assert assemble_global(data).census() == want


def test_segment_strands_have_no_positive_node():
    data = method1_data(bundled("cube"))
    graph = assemble_global(data)
    assert graph.census() == (0, 48, 24)


def test_product_graph_is_boundary_only():
    data = product_data(bundled_polygon("hexagon"))
    graph = assemble_global(data)
    assert graph.census() == (0, 0, 12)
    svg = render_svg(data, graph)
    assert svg.startswith("<svg") and svg.endswith("</svg>")


def test_svg_and_json_deterministic():
    data = method1_data(bundled("p3"))
    graph = assemble_global(data)
    assert render_svg(data, graph) == render_svg(data, assemble_global(data))
    doc = export_json(graph)
    assert set(doc) == {"nodes", "edges"}
    kinds = {v["kind"] for v in doc["nodes"]}
    # stub nodes are the attachment points on ray edges
    assert kinds == {"negative", "positive", "boundary", "stub"}
    ids = {v["id"] for v in doc["nodes"]}
    assert all(a in ids and b in ids for a, b in doc["edges"])
