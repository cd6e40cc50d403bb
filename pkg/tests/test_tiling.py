import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from shapely import set_precision
from shapely.geometry import MultiPoint, Polygon
from shapely.ops import unary_union

from qlat.coxeter import projected_units
from qlat.geometry import rotation_matrix
from qlat.tiling import (
    DissociationError,
    dihedral_transforms,
    dissociate,
    edge_direction_defects,
    grow_patch,
    hexagonal_generators,
    hexagonal_lattice,
    overlap_defects,
    patch_from_subtiling,
    regular_polygon_area,
    rotate_subtiling,
    seed_rotation_patch,
    symmetry_defects,
)
from qlat.voronoi import project_voronoi, voronoi_cell


def key_set(tiles):
    return {t.key() for t in tiles}


@pytest.fixture(scope="module")
def subtilings(basis):
    return {n: dissociate(voronoi_cell(n), basis(n)) for n in (3, 4, 5)}


@pytest.fixture(scope="module")
def seeds(subtilings):
    return {n: seed_rotation_patch(subtilings[n][0], subtilings[n][0].seed_vertex) for n in (4, 5)}


@pytest.fixture(scope="module")
def grown(seeds, subtilings):
    return {n: grow_patch(seeds[n], subtilings[n][0], 2) for n in (4, 5)}


def mirror_angle(patch, basis):
    p = basis.plane_axes(1) @ patch.center_lift
    return math.atan2(p[1], p[0])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_subtilings_tile_the_outer_polygon(n, subtilings, basis):
    subs = subtilings[n]
    assert len(subs) == 2 * n
    want = regular_polygon_area(2 * n, math.sqrt(2 / n))
    rep = project_voronoi(voronoi_cell(n), basis(n))
    outer = max(rep.orbits, key=lambda o: o.radius)
    hull = MultiPoint(rep.points[outer.vertex_indices]).convex_hull
    assert hull.area == pytest.approx(want, abs=1e-9)
    for s in subs:
        assert overlap_defects(s.tiles) == 0
        assert s.area() == pytest.approx(want, abs=1e-8)
        # GEOS unions of float polygons with shared edges need a snap grid
        union = unary_union([set_precision(Polygon(t.vertices), 1e-9) for t in s.tiles])
        assert union.symmetric_difference(set_precision(hull, 1e-9)).area < 1e-8


@pytest.mark.parametrize("n", [3, 4, 5])
def test_subtilings_are_mirror_symmetric(n, subtilings):
    for s in subtilings[n]:
        d = s.symmetry_line
        line = math.atan2(d[1], d[0])
        assert symmetry_defects(s.tiles, (0.0, 0.0), dihedral_transforms(1, line)[1:]) == 0


def test_compositions(subtilings):
    assert Counter(t.angle_class for t in subtilings[3][0].tiles) == {Fraction(1, 3): 3}
    for s in subtilings[4]:
        assert Counter(t.kind for t in s.tiles) == {"thin": 4, "square": 2}
        assert {t.angle_class for t in s.tiles} == {Fraction(1, 4), Fraction(1, 2)}
    for s in subtilings[5]:
        assert Counter(t.angle_class for t in s.tiles) == {Fraction(1, 5): 5, Fraction(2, 5): 5}


def test_octagon_area_identity(subtilings):
    s = subtilings[4][0]
    side = math.sqrt(2 / 4)
    assert 4 * side**2 * math.sin(math.pi / 4) + 2 * side**2 == pytest.approx(s.area(), abs=1e-12)
    assert s.area() == pytest.approx(2 * (1 + math.sqrt(2)) * side**2, abs=1e-12)


def test_n3_has_two_distinct_tilings(subtilings):
    distinct = {frozenset(key_set(s.tiles)) for s in subtilings[3]}
    assert len(distinct) == 2
    s0, s1 = subtilings[3][0], subtilings[3][1]
    assert key_set(s0.tiles).isdisjoint(key_set(s1.tiles))


def test_coverage(subtilings, basis):
    for n in (3, 4):
        d = subtilings[n][0].diagnostics
        assert d["covered_faces"] == d["total_faces"]
    d = subtilings[5][0].diagnostics
    assert (d["covered_faces"], d["total_faces"]) == (60, 80)
    # every face left out touches a vertex that projects to the origin
    cell = voronoi_cell(5)
    rep = project_voronoi(cell, basis(5))
    origin = {tuple(cell.vertices[i]) for i in rep.origin_indices}
    for k in d["uncovered_faces"]:
        assert any(tuple(v) in origin for v in cell.faces2d[k].vertices)


def test_golden_face_choices(subtilings):
    assert subtilings[4][0].diagnostics["face_indices"] == [0, 7, 10, 13, 16, 23]
    assert subtilings[5][0].diagnostics["face_indices"] == [7, 11, 17, 24, 39, 45, 52, 63, 70, 79]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_rotation_matches_planar_rotation(n, subtilings):
    s0 = subtilings[n][0]
    h = 2 * n
    assert key_set(rotate_subtiling(s0, 0).tiles) == key_set(s0.tiles)
    assert key_set(rotate_subtiling(s0, h).tiles) == key_set(s0.tiles)
    for k in (1, 3):
        m = rotation_matrix(2 * math.pi * k / h)
        planar = [t.moved(m) for t in s0.tiles]
        assert key_set(rotate_subtiling(s0, k).tiles) == key_set(planar)
        assert np.allclose(rotate_subtiling(s0, k).symmetry_line, m @ s0.symmetry_line)


def test_seed_patch_sizes_and_symmetry(seeds, basis):
    assert len(seeds[4].tiles) == 24
    assert len(seeds[5].tiles) == 40
    for n, p in seeds.items():
        line = mirror_angle(p, basis(n))
        assert symmetry_defects(p.tiles, p.center, dihedral_transforms(2 * n, line)) == 0
        assert overlap_defects(p.tiles) == 0


@pytest.mark.parametrize("n", [4, 5])
def test_grown_patch_invariants(n, grown, seeds, basis):
    p = grown[n]
    assert len(p.tiles) > len(seeds[n].tiles)
    assert p.layers == 3 and p.diagnostics["complete"]
    assert overlap_defects(p.tiles) == 0
    assert edge_direction_defects(p.tiles, projected_units(basis(n))) == 0
    line = mirror_angle(p, basis(n))
    assert symmetry_defects(p.tiles, p.center, dihedral_transforms(2 * n, line)) == 0
    counts = [layer["tiles"] for layer in p.diagnostics["growth"]]
    assert counts == sorted(set(counts))


def test_grown_tile_counts(grown):
    assert len(grown[4].tiles) == 120
    assert len(grown[5].tiles) == 210


def test_growth_is_independent_of_workers(seeds, subtilings, grown):
    p = grow_patch(seeds[4], subtilings[4][0], 2, workers=3)
    assert [t.key() for t in p.tiles] == [t.key() for t in grown[4].tiles]


def test_zero_layers_is_identity(seeds, subtilings):
    assert grow_patch(seeds[4], subtilings[4][0], 0) is seeds[4]
    with pytest.raises(ValueError):
        grow_patch(seeds[4], subtilings[4][0], -1)


def test_checker_detects_a_broken_patch(seeds, basis):
    p = seeds[4]
    line = mirror_angle(p, basis(4))
    assert symmetry_defects(p.tiles[1:], p.center, dihedral_transforms(8, line)) > 0
    overlapping = p.tiles + [p.tiles[0].moved(np.eye(2), center=(0, 0))]
    shifted = overlapping[-1]
    overlapping[-1] = type(shifted)(shifted.vertices + 0.05, shifted.angle_class)
    assert overlap_defects(overlapping) > 0


def test_subtiling_as_patch(subtilings):
    p = patch_from_subtiling(subtilings[4][0])
    assert p.layers == 0 and len(p.tiles) == 6


def test_invalid_seed_vertex(subtilings):
    with pytest.raises(ValueError):
        seed_rotation_patch(subtilings[4][0], [0.5, 0.5, 0.5, 0.0])


def test_dissociation_needs_rank_three(basis):
    with pytest.raises(ValueError):
        dissociate(voronoi_cell(2), basis(2))


def test_exhausted_search_is_reported(basis):
    with pytest.raises(DissociationError):
        dissociate(voronoi_cell(5), basis(5), max_nodes=10)


def test_hexagonal_generators():
    u, v = hexagonal_generators()
    assert u @ u == pytest.approx(2 / 3, abs=1e-12)
    assert v @ v == pytest.approx(2 / 3, abs=1e-12)
    assert math.degrees(math.acos(u @ v / math.sqrt((u @ u) * (v @ v)))) == pytest.approx(120, abs=1e-10)


def test_hexagonal_lattice():
    assert len(hexagonal_lattice(1).tiles) == 6
    for extent in (2, 3):
        patch = hexagonal_lattice(extent)
        assert len(patch.tiles) == 6 * extent**2
        assert overlap_defects(patch.tiles) == 0
        assert {t.kind for t in patch.tiles} == {"other"}
    u, _ = hexagonal_generators()
    line = math.atan2(u[1], u[0])
    patch = hexagonal_lattice(3)
    assert symmetry_defects(patch.tiles, (0, 0), dihedral_transforms(6, line)) == 0
    # a vertex of the projected cell, checked on the window that fits in the patch
    assert symmetry_defects(patch.tiles, u, dihedral_transforms(6, line), window=1.2 * np.linalg.norm(u)) == 0
    with pytest.raises(ValueError):
        hexagonal_lattice(0)
