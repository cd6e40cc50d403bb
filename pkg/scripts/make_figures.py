"""Write SVG and JSON renderings of projections, dissociations and patches."""

import argparse
from pathlib import Path

from qlat.coxeter import principal_basis
from qlat.io import PatchDocument, cube_edges, projection_svg, tiles_svg
from qlat.roots import BasisChoice, build_root_system
from qlat.tiling import dissociate, grow_patch, hexagonal_lattice, patch_from_subtiling, seed_rotation_patch
from qlat.voronoi import project_voronoi, voronoi_cell


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--layers", type=int, default=2, help="growth passes after the seed rotation")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for n in (3, 4, 5):
        basis = principal_basis(build_root_system(n, BasisChoice.CYCLIC))
        rep = project_voronoi(voronoi_cell(n), basis)
        _write(out / f"projection_n{n}.svg", projection_svg(rep.points, cube_edges(n), f"V(0) of Z^{n}"))

    _write(out / "hexagonal_lattice.svg", tiles_svg(hexagonal_lattice(3).tiles, "hexagonal lattice"))

    for n, name in ((3, "hexagon"), (4, "octagon"), (5, "decagon")):
        basis = principal_basis(build_root_system(n, BasisChoice.CYCLIC))
        subs = dissociate(voronoi_cell(n), basis)
        tiles = [t for s in subs for t in s.tiles]
        _write(out / f"{name}_dissociation.svg", tiles_svg(tiles, f"{len(subs)} rotated {name}s"))
        _write(out / f"{name}_single.svg", tiles_svg(patch_from_subtiling(subs[0]).tiles, f"one {name}"))
        if n == 3:
            continue
        s = subs[0]
        seed = seed_rotation_patch(s, s.seed_vertex)
        _write(out / f"{name}_seed.svg", tiles_svg(seed.tiles, f"{2 * n}-fold seed", seed.center))
        patch = grow_patch(seed, s, args.layers, workers=args.workers)
        title = f"{2 * n}-fold patch, {len(patch.tiles)} tiles"
        _write(out / f"{name}_patch.svg", tiles_svg(patch.tiles, title, patch.center))
        _write(out / f"{name}_patch.json", PatchDocument.from_patch(patch).to_json())
        if not patch.diagnostics.get("complete", True):
            print(f"warning: {name} growth stalled after {patch.layers - 1} passes")


if __name__ == "__main__":
    main()
