"""Command line: ``qlat table1 | project | tile | verify``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from qlat import checks
from qlat.coxeter import principal_basis
from qlat.io import PatchDocument, cube_edges, projection_svg, tiles_svg, write_text
from qlat.roots import BasisChoice, build_root_system
from qlat.tiling import build_patch
from qlat.voronoi import MAX_N, project_voronoi, rhomb_classes, table1, voronoi_cell


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def cmd_table1(args) -> int:
    if not 1 <= args.max_n <= MAX_N:
        print(f"error: --max-n must be in 1..{MAX_N}", file=sys.stderr)
        return 2
    rows = table1(args.max_n)
    if args.json is not None:
        write_text(args.json, _dump([r.as_dict() for r in rows]))
        if args.json == "-":
            return 0
    print("n | vertices | h-gons | origin | rhomb angles")
    for r in rows:
        print(r.format())
    return 0


def cmd_project(args) -> int:
    n = args.n
    if not 2 <= n <= MAX_N:
        print(f"error: -n must be in 2..{MAX_N}", file=sys.stderr)
        return 2
    basis = principal_basis(build_root_system(n, BasisChoice.CYCLIC))
    try:
        basis.plane_axes(args.plane)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cell = voronoi_cell(n)
    report = project_voronoi(cell, basis, args.plane)
    data = report.as_dict()
    data["angles"] = [[a.numerator, a.denominator] for a, _ in rhomb_classes(cell, basis, args.plane)]
    data["points"] = [[float(f"{x:.15g}"), float(f"{y:.15g}")] for x, y in report.points]
    json_path = args.json
    if args.format == "json" and json_path is None and args.svg is None:
        json_path = "-"
    if args.format == "svg" and args.svg is None and json_path is None:
        args.svg = "-"
    try:
        if args.svg is not None:
            title = f"V(0) of Z^{n} on principal plane {args.plane}"
            write_text(args.svg, projection_svg(report.points, cube_edges(n), title))
        if json_path is not None:
            write_text(json_path, _dump(data))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.svg != "-" and json_path != "-":
        groups = ", ".join(f"{c}x r={r:.6f}" for r, c in report.radius_groups())
        print(f"n={n} plane={args.plane}: {report.polygon_count} {basis.h}-gons [{groups}], {report.origin_count} at origin")
    return 0


def _parse_vertex(text: str | None, n: int):
    if text is None:
        return None
    parts = [float(x) for x in text.replace(" ", "").split(",") if x]
    if len(parts) != n or any(abs(x) != 1 for x in parts):
        raise ValueError(f"--seed-vertex needs {n} entries of +-1, e.g. " + ",".join(["1"] * n))
    return 0.5 * np.array(parts)


def cmd_tile(args) -> int:
    n = args.n
    if not 3 <= n <= MAX_N or args.layers < 0:
        print("error: tiling needs -n >= 3 and --layers >= 0", file=sys.stderr)
        return 2
    try:
        seed = _parse_vertex(args.seed_vertex, n)
        patch = build_patch(n, args.layers, seed, workers=args.workers)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    complete = patch.diagnostics.get("complete", True)
    meta = {"growth": patch.diagnostics.get("growth", [])}
    doc = PatchDocument.from_patch(patch, meta)
    try:
        if args.json is not None:
            write_text(args.json, doc.to_json())
        if args.svg is not None:
            write_text(args.svg, tiles_svg(patch.tiles, f"{patch.h}-fold patch, n={n}", patch.center))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json != "-" and args.svg != "-":
        print(f"n={n} layers={patch.layers}: {len(patch.tiles)} tiles about ({patch.center[0]:.6f}, {patch.center[1]:.6f})")
    if not complete:
        print("error: growth stalled; wrote the partial patch", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    if not 1 <= args.n <= 10:
        print("error: -n must be in 1..10", file=sys.stderr)
        return 2
    results = checks.verify(args.n)
    for c in results:
        print(c.line())
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="Voronoi-cell projection table for n = 1..max-n")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--json", metavar="PATH|-", help="also write JSON records ('-' for stdout only)")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("project", help="project V(0) of Z^n onto a principal plane")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--plane", type=int, default=1, help="principal plane index, 1 = Coxeter plane")
    p.add_argument("--svg", metavar="PATH|-")
    p.add_argument("--json", metavar="PATH|-")
    p.add_argument("--format", choices=("text", "json", "svg"), default="text")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("tile", help="dissociate V(0) and grow a symmetric rhombic patch")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--layers", type=int, default=1, help="0: one h-gon, 1: seed rotation, >1: growth passes")
    p.add_argument("--seed-vertex", metavar="S1,...,Sn", help="signs of the anchor vertex (1/2)(+-1, ..., +-1)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--svg", metavar="PATH|-")
    p.add_argument("--json", metavar="PATH|-")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("verify", help="run the invariant checks for one n")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rc = args.func(args)
    if rc == 2:
        parser.print_usage(sys.stderr)
    return rc


if __name__ == "__main__":
    sys.exit(main())
