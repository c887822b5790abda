"""Polytope files, the reflexive-polytope database, and bundled fixtures."""

from __future__ import annotations

import json
import warnings
from importlib import resources

from .degeneration import (DegenerationData, RaySummand, Slab,
                           line_fan_data, normal_fan_data, product_data)
from .polytope import LatticePolytope, Polygon, PolytopeError


class ParseError(ValueError):
    pass


EXPECTED_DB_SIZE = 4319


def _fixture_dir():
    return resources.files("fanoscope") / "fixtures"


def parse_polytope(path_or_text, name=None):
    """Read a polytope from JSON {"name", "palp_id", "vertices"} or from a
    whitespace matrix with an "r c" header.  Returns (name, palp_id, P)."""
    text = path_or_text
    if "\n" not in str(path_or_text) and not str(path_or_text).lstrip().startswith("{"):
        with open(path_or_text) as fh:
            text = fh.read()
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON polytope: {exc}") from exc
        verts = doc.get("vertices")
        if not verts:
            raise ParseError("polytope JSON without vertices")
        return (doc.get("name", name or "polytope"), doc.get("palp_id"),
                _build(verts))
    lines = [ln for ln in text.splitlines() if ln.strip()]
    try:
        header = [int(x) for x in lines[0].split()[:2]]
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad matrix polytope: {exc}") from exc
    if len(header) != 2:
        raise ParseError("matrix header must be 'rows cols'")
    r, c = header
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ParseError(f"matrix body does not match header {r}x{c}")
    verts = _orient(rows, r, c)
    return (name or "polytope", None, _build(verts))


def _orient(rows, r, c):
    if r == 3 and c != 3:
        return [list(col) for col in zip(*rows)]
    if c == 3:
        return rows  # rows are vertices; covers the ambiguous 3x3 case
    raise ParseError("neither dimension is 3")


def _build(verts):
    try:
        p = LatticePolytope(verts)
    except PolytopeError as exc:
        raise ParseError(str(exc)) from exc
    if not p.is_fano():
        raise PolytopeError("not a Fano polytope: vertices must be primitive "
                            "with the origin strictly interior")
    return p


def serialize_polytope(p: LatticePolytope, name="polytope", palp_id=None) -> str:
    doc = {"name": name, "palp_id": palp_id,
           "vertices": [list(v) for v in p.vertices]}
    return json.dumps(doc, sort_keys=True)


def serialize_polytope_text(p: LatticePolytope) -> str:
    """Whitespace-matrix form, vertices in columns under a '3 k' header."""
    cols = list(zip(*p.vertices))
    lines = [f"3 {len(p.vertices)}"]
    lines += [" ".join(str(x) for x in row) for row in cols]
    return "\n".join(lines) + "\n"


def ingest_database(path):
    """Stream (id, LatticePolytope) from the published 3D reflexive list.

    Blocks are an 'r c ...' header line followed by an r x c integer matrix;
    vertices sit in columns when r == 3.  Ids are 0-based positions.
    """
    count = 0
    with open(path) as fh:
        lines = iter(fh)
        for line in lines:
            parts = line.split()
            if len(parts) < 2:
                continue
            try:
                r, c = int(parts[0]), int(parts[1])
            except ValueError:
                continue
            block = []
            for _ in range(r):
                block.append([int(x) for x in next(lines).split()])
            if any(len(row) != c for row in block):
                raise ParseError(f"database block {count} is ragged")
            verts = _orient(block, r, c)
            yield count, LatticePolytope(verts)
            count += 1
    if count != EXPECTED_DB_SIZE:
        warnings.warn(f"database has {count} entries, expected "
                      f"{EXPECTED_DB_SIZE}", stacklevel=2)


# ---------------------------------------------------------------------------
# fixtures


def load_fixture(name_or_path) -> dict:
    text = None
    name = str(name_or_path)
    if name.endswith(".json") and "/" in name:
        with open(name) as fh:
            text = fh.read()
    else:
        base = name[:-5] if name.endswith(".json") else name
        res = _fixture_dir() / f"{base}.json"
        try:
            text = res.read_text()
        except FileNotFoundError:
            with open(name_or_path) as fh:
                text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad fixture JSON: {exc}") from exc


def list_fixtures():
    out = []
    for entry in _fixture_dir().iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[:-5])
    return sorted(out)


def data_from_fixture(doc: dict) -> DegenerationData:
    kind = doc.get("kind")
    name = doc.get("name", "fixture")
    p = LatticePolytope(doc["polytope"]) if doc.get("polytope") else None
    if kind == "normal_fan":
        ev = doc.get("edge_values")
        data = normal_fan_data(p, ev, doc.get("choice"), name)
    elif kind == "line_fan":
        data = line_fan_data(p, doc["direction"], doc["rays2d"],
                             doc.get("edge_data", []), name,
                             doc.get("ray_data", "auto"))
    elif kind == "product":
        data = product_data(Polygon(doc["base_polygon"]), name)
    elif kind == "slabs":
        data = _slab_fixture(doc, name, p)
    else:
        raise ParseError(f"unknown fixture kind {kind!r}")
    if doc.get("vertex_count") is not None:
        data.vertex_count = int(doc["vertex_count"])
    if doc.get("b2") is not None:
        data.b2_fixture = int(doc["b2"]["value"])
        data.b2_source = doc["b2"].get("source", "fixture")
    if doc.get("degree") is not None:
        data.degree_fixture = int(doc["degree"])
    if doc.get("boundary_components") is not None:
        data.boundary_components = int(doc["boundary_components"])
    data.notes["expected"] = doc.get("expected", {})
    return data


def _slab_fixture(doc, name, p):
    slabs = []
    for spec in doc["slabs"]:
        poly = Polygon(spec["polygon"])
        if [list(v) for v in poly.vertices] != [list(v) for v in spec["polygon"]]:
            raise ParseError(
                f"slab {spec['name']}: polygon must be listed in canonical "
                f"ccw order starting at the lex-least vertex; canonical is "
                f"{[list(v) for v in poly.vertices]}")
        k = len(poly.vertices)
        coeffs = [0] * k
        for idx, val in spec.get("coeffs", {}).items():
            coeffs[int(idx)] = int(val)
        roles = ["boundary"] * k
        for idx, val in spec.get("roles", {}).items():
            roles[int(idx)] = val
        slabs.append(Slab(spec["name"], poly, tuple(coeffs), tuple(roles)))
    summands = []
    for ray, entries in doc.get("rays", {}).items():
        for ent in entries:
            cnt = int(ent.get("count", 1))
            for _ in range(cnt):
                summands.append(RaySummand(ray, ent["kind"],
                                           tuple(ent.get("slabs", ()))))
    data = DegenerationData(name=name, kind="slabs", slabs=slabs,
                            ray_summands=summands, polytope=p,
                            dual=p.polar_dual() if p else None)
    data.validate()
    return data


def expected_rows():
    """The bundled table of expected invariants for the 105 families."""
    doc = json.loads((_fixture_dir() / "expected_invariants.json").read_text())
    return doc["rows"]


def bundled_polytopes() -> dict:
    return json.loads((_fixture_dir() / "polytopes.json").read_text())


def bundled_polytope(name: str) -> LatticePolytope:
    table = bundled_polytopes()
    if name not in table:
        raise ParseError(f"unknown bundled polytope {name!r}; have "
                         f"{sorted(table)}")
    return LatticePolytope(table[name]["vertices"])
