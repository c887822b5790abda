"""Command-line surface: analyze, decompositions, verify24, gamma,
discriminant, table.

Exit codes: 0 success, 1 validation failure, 2 parse / IO error.  Errors are
emitted as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from multiprocessing import Pool

from . import fileio
from .degeneration import (DegenerationError, decomposition_regimes,
                           method1_data, product_data)
from .discriminant import assemble_global, export_json, render_svg
from .fileio import ParseError
from .gamma import GammaError, build_system, gamma_dimension
from .invariants import InvariantError, analyze
from .linalg import kernel_basis
from .polytope import LatticePolytope, Polygon, PolytopeError, identity24


def _fail(kind: str, message: str, code: int):
    sys.stderr.write(json.dumps({"error": kind, "message": message},
                                sort_keys=True) + "\n")
    return code


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=1) + "\n")


def _resolve_polytope(target: str) -> LatticePolytope:
    table = fileio.bundled_polytopes()
    if target in table:
        return LatticePolytope(table[target]["vertices"])
    _, _, p = fileio.parse_polytope(target)
    return p


def _resolve_data(target: str, decomposition=None, fixture=False):
    """Degeneration data from a bundled name or a file path."""
    table = fileio.bundled_polytopes()
    if not fixture and target in table.get("polygons", {}):
        return [product_data(Polygon(table["polygons"][target]), target)]
    if fixture or target in fileio.list_fixtures() or _looks_like_fixture(target):
        return [fileio.data_from_fixture(fileio.load_fixture(target))]
    p = _resolve_polytope(target)
    name = target if target in table else os.path.basename(str(target))
    if decomposition in (None, "auto"):
        regimes = decomposition_regimes(p)
        counts = [len(r) for r in regimes]
        if decomposition is None or all(c == 1 for c in counts):
            return [method1_data(p, None, name)]
        out = []
        total = 1
        for c in counts:
            total *= c
        if total > 512:
            raise DegenerationError(f"{total} decomposition choices; pick one")
        choices = [[]]
        for c in counts:
            choices = [ch + [i] for ch in choices for i in range(c)]
        for ch in choices:
            out.append(method1_data(p, tuple(ch), f"{name}[{','.join(map(str, ch))}]"))
        return out
    idx = tuple(int(x) for x in str(decomposition).split(","))
    return [method1_data(p, idx, name)]


def _looks_like_fixture(target: str) -> bool:
    if not str(target).endswith(".json") or not os.path.exists(target):
        return False
    with open(target) as fh:
        head = fh.read(512)
    return '"kind"' in head


def cmd_analyze(args):
    datas = _resolve_data(args.target, args.decomposition, args.fixture)
    reports = [analyze(d).to_dict() for d in datas]
    _emit(reports[0] if len(reports) == 1 else reports)
    return 0


def cmd_decompositions(args):
    p = _resolve_polytope(args.target)
    regimes = decomposition_regimes(p)
    dual = p.polar_dual()
    out = []
    for vid, decos in enumerate(regimes):
        if args.facet is not None and args.facet != vid:
            continue
        entry = {
            "facet_of_P_dual_to_dual_vertex": vid,
            "dual_vertex": [str(x) for x in dual.vertices[vid]],
            "count": len(decos),
            "decompositions": [
                [{"kind": s.kind, "vectors": [list(v) for v in s.vectors]}
                 for s in deco] for deco in decos],
        }
        out.append(entry)
    _emit(out)
    return 0


def _verify24_worker(item):
    ident, verts = item
    p = LatticePolytope(verts)
    total = identity24(p)
    return ident, total, total == 24


def cmd_verify24(args):
    path = args.db or os.environ.get("FANOSCOPE_DB")
    if not path:
        return _fail("usage", "no database: pass --db or set FANOSCOPE_DB", 2)
    items = [(i, [list(v) for v in p.vertices])
             for i, p in fileio.ingest_database(path)]
    if args.parallel and args.parallel > 1:
        with Pool(args.parallel) as pool:
            rows = pool.map(_verify24_worker, items, chunksize=64)
    else:
        rows = [_verify24_worker(it) for it in items]
    rows.sort(key=lambda r: r[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "sum", "pass"])
    ok = True
    for ident, total, good in rows:
        writer.writerow([ident, total, "pass" if good else "FAIL"])
        ok = ok and good
    _write_out(args.out, buf.getvalue())
    return 0 if ok else 1


def cmd_gamma(args):
    datas = _resolve_data(args.target, args.decomposition)
    out = []
    for d in datas:
        system = build_system(d)
        dim = gamma_dimension(d)
        basis = kernel_basis(system.rows) if system.rows else []
        alphas = _reduced_basis([vec[:system.n_alpha] for vec in basis])
        out.append({
            "name": d.name,
            "dim_gamma": dim,
            "b2": dim - 2,
            "alpha_cones": system.cone_names,
            "solution_basis": [[str(x) for x in vec] for vec in alphas],
        })
    _emit(out[0] if len(out) == 1 else out)
    return 0


def _reduced_basis(vectors):
    """Echelon basis of the span of the given rational vectors."""
    from fractions import Fraction
    rows = [[Fraction(x) for x in v] for v in vectors if any(v)]
    basis = []
    for row in rows:
        for b in basis:
            piv = next(i for i, x in enumerate(b) if x)
            if row[piv]:
                f = row[piv] / b[piv]
                row = [x - f * y for x, y in zip(row, b)]
        if any(row):
            piv = next(i for i, x in enumerate(row) if x)
            basis.append([x / row[piv] for x in row])
    basis.sort(key=lambda b: [str(x) for x in b])
    return basis


def cmd_discriminant(args):
    datas = _resolve_data(args.target, args.decomposition, args.fixture)
    os.makedirs(args.svg, exist_ok=True)
    written = []
    for d in datas:
        graph = assemble_global(d)
        stem = d.name.replace(" ", "_").replace("/", "_")
        svg_path = os.path.join(args.svg, f"{stem}.svg")
        with open(svg_path, "w") as fh:
            fh.write(render_svg(d, graph))
        json_path = os.path.join(args.svg, f"{stem}.json")
        with open(json_path, "w") as fh:
            json.dump(export_json(graph), fh, sort_keys=True, indent=1)
        p, n, b = graph.census()
        written.append({"name": d.name, "svg": svg_path, "graph": json_path,
                        "positive": p, "negative": n, "boundary": b})
    _emit(written)
    return 0


def _match_db_row(row, p: LatticePolytope):
    """Try every decomposition choice; return a matching report dict."""
    regimes = decomposition_regimes(p)
    counts = [len(r) for r in regimes]
    if any(c == 0 for c in counts):
        return None, "no smooth decomposition"
    choices = [[]]
    for c in counts:
        choices = [ch + [i] for ch in choices for i in range(c)]
        if len(choices) > 4096:
            return None, "too many choices"
    last = None
    for ch in choices:
        data = method1_data(p, tuple(ch), row["name"])
        rep = analyze(data)
        last = rep
        if (rep.degree, rep.p, rep.n, rep.euler) == \
                (row["degree"], row["p"], row["n"], row["chi"]):
            return rep, None
    return None, (f"no choice matches; last gave degree={last.degree} "
                  f"p={last.p} n={last.n} chi={last.euler}")


def cmd_table(args):
    if args.manifest == "expected":
        rows = fileio.expected_rows()
    else:
        with open(args.manifest) as fh:
            rows = json.load(fh)["rows"]
    db_path = args.db or os.environ.get("FANOSCOPE_DB")
    db = {}
    if db_path:
        wanted = {r["palp"] for r in rows
                  if r.get("method") == "db" and r.get("palp") is not None}
        for i, p in fileio.ingest_database(db_path):
            if i in wanted:
                db[i] = p
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Name", "PALP ID", "Degree", "p", "n", "chi", "Notes"])
    failures = []
    for row in rows:
        method = row.get("method", "db")
        expected = (row["degree"], row["p"], row["n"], row["chi"])
        note = ""
        got = None
        if method == "db":
            if row["palp"] not in db:
                note = "skipped: database not supplied" if not db_path \
                    else "FAIL: id missing from database"
                if db_path:
                    failures.append(row["name"])
            else:
                rep, err = _match_db_row(row, db[row["palp"]])
                if rep is None:
                    note = f"FAIL: {err}"
                    failures.append(row["name"])
                else:
                    got = (rep.degree, rep.p, rep.n, rep.euler)
                    note = "ok"
        elif method.startswith("fixture:"):
            data = fileio.data_from_fixture(
                fileio.load_fixture(method.split(":", 1)[1]))
            rep = analyze(data)
            got = (rep.degree, rep.p, rep.n, rep.euler)
            note = "ok (method 2)" if got == expected else "FAIL: mismatch"
            if got != expected:
                failures.append(row["name"])
        elif method.startswith("product:"):
            table = fileio.bundled_polytopes()
            poly = Polygon(table["polygons"][method.split(":", 1)[1]])
            rep = analyze(product_data(poly, row["name"]))
            got = (rep.degree, rep.p, rep.n, rep.euler)
            note = "ok (product)" if got == expected else "FAIL: mismatch"
            if got != expected:
                failures.append(row["name"])
        else:
            note = "stated only (construction out of scope)"
        if row.get("chi_printed") is not None:
            note += f"; table prints chi = {row['chi_printed']}"
        writer.writerow([row["name"], row["palp"] if row["palp"] is not None
                         else "n/a", row["degree"], row["p"], row["n"],
                         row["chi"], note])
    _write_out(args.out, buf.getvalue())
    if failures:
        sys.stderr.write(json.dumps(
            {"error": "table", "message": f"rows failed: {failures}"}) + "\n")
        return 1
    return 0


def _write_out(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="fanoscope",
        description="Degeneration data and torus-fibration invariants of "
                    "Fano 3-polytopes")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="invariant report for a polytope or "
                                       "fixture")
    a.add_argument("target")
    a.add_argument("--decomposition", default=None,
                   help="'auto', or comma-separated per-facet indices")
    a.add_argument("--fixture", action="store_true",
                   help="treat target as a degeneration fixture file")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("decompositions", help="smooth Minkowski "
                                              "decompositions per facet")
    d.add_argument("target")
    d.add_argument("--facet", type=int, default=None)
    d.set_defaults(func=cmd_decompositions)

    v = sub.add_parser("verify24", help="check the 24-identity over the "
                                        "reflexive database")
    v.add_argument("--db", default=None)
    v.add_argument("--parallel", type=int, default=0)
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify24)

    g = sub.add_parser("gamma", help="dimension of the section space and b2")
    g.add_argument("target")
    g.add_argument("--decomposition", default=None)
    g.set_defaults(func=cmd_gamma)

    s = sub.add_parser("discriminant", help="export discriminant graphs")
    s.add_argument("target")
    s.add_argument("--svg", required=True, help="output directory")
    s.add_argument("--decomposition", default=None)
    s.add_argument("--fixture", action="store_true")
    s.set_defaults(func=cmd_discriminant)

    t = sub.add_parser("table", help="reproduce the expected-invariants table")
    t.add_argument("manifest", help="manifest JSON path or 'expected'")
    t.add_argument("--db", default=None)
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    except (DegenerationError, InvariantError, GammaError, PolytopeError,
            ValueError) as exc:
        return _fail(type(exc).__name__, str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
