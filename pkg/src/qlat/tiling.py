"""Dissociation of the projected Voronoi cell and growth of symmetric patches.

Every tile carries a lift: a square 2-face of some lattice translate of V(0),
stored as its pair of free axes plus its doubled center (an integer vector).
Group elements act on lifts exactly; planar coordinates are only derived for
overlap tests and output. Two tiles are the same when their free-axis pair and
projected centroid agree on the eps_geo grid; for non-overlapping rhombs this
is the same relation as comparing rounded vertex sets.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from qlat.constants import OVERLAP_AREA, eps_geo
from qlat.coxeter import PlanarPoint, PrincipalBasis, principal_basis
from qlat.dihedral import dihedral_elements, dihedral_generators
from qlat.geometry import counterclockwise, overlap_area, reflection_matrix, rotation_matrix, sat_pairs
from qlat.roots import BasisChoice, RootSystem, build_root_system
from qlat.voronoi import Face2, Rhomb, VoronoiCell, acute_angle, snap_angle, voronoi_cell

_DEFAULT_SEEDS = {
    3: (1, 1, 1),
    4: (1, 1, -1, -1),
    5: (1, 1, 1, 1, 1),
}


class DissociationError(RuntimeError):
    """No admissible tiling of the outer h-gon was found."""


class GeometryError(RuntimeError):
    """Tiles that should be disjoint or identical overlap partially."""


class GrowthError(RuntimeError):
    """Patch growth stalled before using its layer budget."""


def point_dihedral(rs: RootSystem) -> np.ndarray:
    """The 2h point elements R^0, R^0 R1, R^1, R^1 R1, ... as integer matrices."""
    r1, r2 = dihedral_generators(rs)
    els = dihedral_elements(r1.point_part, r2.point_part, 2 * rs.n)
    return np.rint(np.array([e.linear for e in els])).astype(np.int64)


class _Lift:
    """Integer bookkeeping for faces of lattice translates of V(0)."""

    def __init__(self, basis: PrincipalBasis):
        n = basis.n
        self.basis = basis
        self.n, self.h = n, 2 * n
        self.P = basis.plane_axes(1)
        self.D = point_dihedral(basis.roots)
        index = {m.tobytes(): i for i, m in enumerate(self.D)}
        self.mult = np.array([[index[(a @ b).tobytes()] for b in self.D] for a in self.D])
        # perm[g, i]: the axis that element g sends l_i to (up to sign)
        self.perm = np.abs(self.D).argmax(axis=1)
        half = 0.5 * np.array([[1, 1], [-1, 1], [-1, -1], [1, -1]])
        self.corner = np.zeros((n, n, 4, 2))
        self.angle = {}
        for i, j in itertools.combinations(range(n), 2):
            c = half[:, :1] * self.P[:, i] + half[:, 1:] * self.P[:, j]
            self.corner[i, j] = self.corner[j, i] = c
            self.angle[(i, j)] = snap_angle(acute_angle(self.P[:, i], self.P[:, j]), self.h)
        self.eps = eps_geo()

    def map_axes(self, g, axes):
        a = self.perm[g, axes[..., 0]]
        b = self.perm[g, axes[..., 1]]
        return np.stack([np.minimum(a, b), np.maximum(a, b)], axis=-1)

    def centroids(self, c2):
        return c2 @ self.P.T / 2.0

    def polys(self, axes, cent):
        return cent[..., None, :] + self.corner[axes[..., 0], axes[..., 1]]

    def keys(self, axes, cent) -> list[tuple]:
        grid = np.rint(cent / self.eps).astype(np.int64)
        return list(map(tuple, np.concatenate([axes, grid], axis=-1).reshape(-1, 4).tolist()))

    def transform(self, g, t2, axes, c2):
        """Image of faces under the point element ``g`` and doubled translation ``t2``."""
        return self.map_axes(g, axes), c2 @ self.D[g].T + t2

    def rhombs(self, axes, c2) -> list[Rhomb]:
        cent = self.centroids(c2)
        polys = self.polys(axes, cent)
        return [
            Rhomb(counterclockwise(p), self.angle[(int(a), int(b))], Face2((int(a), int(b)), c / 2.0))
            for p, (a, b), c in zip(polys, axes, c2)
        ]


def _faces_of(tiles: list[Rhomb], n: int) -> tuple[np.ndarray, np.ndarray]:
    if any(t.source is None for t in tiles):
        raise ValueError("tiles without a lift cannot be acted on")
    axes = np.array([t.source.free_axes for t in tiles], dtype=np.int64).reshape(-1, 2)
    c2 = np.array([np.rint(2 * t.source.center) for t in tiles], dtype=np.int64).reshape(-1, n)
    return axes, c2


def _bbox(polys):
    return polys.min(axis=1), polys.max(axis=1)


def _first_overlap(a, b, same: bool = False, tol: float = 1e-9):
    """First pair (i, j) with a[i], b[j] overlapping by more than OVERLAP_AREA."""
    if len(a) == 0 or len(b) == 0:
        return None
    alo, ahi = _bbox(a)
    blo, bhi = _bbox(b)
    mask = ((alo[:, None] < bhi[None] - tol) & (blo[None] < ahi[:, None] - tol)).all(axis=-1)
    if same:
        mask &= np.triu(np.ones(mask.shape, dtype=bool), 1)
    ii, jj = np.nonzero(mask)
    if len(ii) == 0:
        return None
    hit = sat_pairs(a[ii], b[jj], tol)
    for i, j in zip(ii[hit], jj[hit]):
        if overlap_area(a[i], b[j]) > OVERLAP_AREA:
            return int(i), int(j)
    return None


def _dedupe(lift: _Lift, axes, c2, existing: set | None = None):
    """Drop faces whose tile already occurs (earlier in the list or in ``existing``)."""
    keys = lift.keys(axes, lift.centroids(c2))
    seen = set() if existing is None else existing
    keep, new_keys = [], []
    local = set()
    for idx, k in enumerate(keys):
        if k in seen or k in local:
            continue
        local.add(k)
        keep.append(idx)
        new_keys.append(k)
    keep = np.array(keep, dtype=np.int64)
    return axes[keep], c2[keep], new_keys


# --------------------------------------------------------------------------- subtilings


@dataclass(frozen=True, eq=False)
class SubTiling:
    """A rhombic tiling of the outer h-gon by projected faces of V(0)."""

    tiles: list[Rhomb]
    symmetry_line: np.ndarray
    rotation_index: int
    basis: PrincipalBasis
    seed_vertex: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def h(self) -> int:
        return self.basis.h

    def area(self) -> float:
        return float(sum(_poly_area(t.vertices) for t in self.tiles))

    def keys(self) -> list[tuple]:
        return sorted(t.key() for t in self.tiles)


def _poly_area(p) -> float:
    x, y = p[:, 0], p[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def default_seed_vertex(n: int, basis: PrincipalBasis | None = None) -> np.ndarray:
    """Anchor vertex of the seed rotation, as a point of R^n.

    For n = 3, 4, 5 these are the classical choices. Otherwise the first vertex
    of V(0) on the outer orbit that is fixed by a reflection of the dihedral
    subgroup is used.
    """
    if n in _DEFAULT_SEEDS:
        return 0.5 * np.array(_DEFAULT_SEEDS[n], dtype=float)
    if n < 3:
        raise ValueError("seed vertices are defined for n >= 3")
    basis = basis or principal_basis(build_root_system(n, BasisChoice.CYCLIC))
    cell = voronoi_cell(n)
    D = point_dihedral(basis.roots)
    radii = np.linalg.norm(cell.vertices @ basis.plane_axes(1).T, axis=1)
    rmax = radii.max()
    for v, r in zip(cell.vertices, radii):
        if abs(r - rmax) > 1e-9:
            continue
        if any(np.array_equal(D[k] @ (2 * v), 2 * v) for k in range(1, len(D), 2)):
            return v.copy()
    raise ValueError(f"no reflection-fixed outer vertex for n={n}")


def _half_integer_vertex(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (n,):
        raise ValueError(f"seed vertex must have {n} coordinates")
    v2 = np.rint(2 * v)
    if np.abs(2 * v - v2).max() > 1e-9 or not np.all(np.abs(v2) == 1):
        raise ValueError("seed vertex must be a vertex of V(0), i.e. (1/2)(+-1, ..., +-1)")
    return v2.astype(np.int64)


def _seed_rotation(lift: _Lift, axes, c2, p2):
    """Faces of the h rotations about p (doubled) and the first overlap, if any."""
    parts_a, parts_c = [], []
    for k in range(lift.h):
        g = 2 * k
        a, c = lift.transform(g, p2 - lift.D[g] @ p2, axes, c2)
        parts_a.append(a)
        parts_c.append(c)
    ax, cc, _ = _dedupe(lift, np.concatenate(parts_a), np.concatenate(parts_c))
    polys = lift.polys(ax, lift.centroids(cc))
    return ax, cc, _first_overlap(polys, polys, same=True)


def dissociate(
    cell: VoronoiCell,
    basis: PrincipalBasis,
    seed_vertex=None,
    max_nodes: int = 2_000_000,
) -> list[SubTiling]:
    """Split the projected V(0) into h rotated copies of one rhombic h-gon tiling.

    Backtracking picks one face per pair of free axes, in lexicographic face
    order, subject to: pairwise interior-disjoint tiles; invariance under the
    dihedral reflection fixing ``seed_vertex``; the h rotations covering every
    face that is not incident to a vertex projecting to the origin; and the h
    rotations about ``seed_vertex`` meeting only in whole tiles. A zonogon
    tiling has exactly one rhomb per axis pair, so area completeness follows.
    """
    n = cell.n
    if n < 3:
        raise ValueError("dissociation needs n >= 3")
    if basis.n != n:
        raise ValueError("cell and basis dimensions differ")
    lift = _Lift(basis)
    p = default_seed_vertex(n, basis) if seed_vertex is None else np.asarray(seed_vertex, dtype=float)
    p2 = _half_integer_vertex(p, n)

    axes = cell.face_axes.astype(np.int64)
    c2 = np.rint(2 * cell.face_centers).astype(np.int64)
    nf = len(axes)
    polys = lift.polys(axes, lift.centroids(c2))

    overlap = np.zeros((nf, nf), dtype=bool)
    alo, ahi = _bbox(polys)
    for i in range(nf):
        mask = ((alo[i] < ahi - 1e-9) & (alo < ahi[i] - 1e-9)).all(axis=1)
        mask[: i + 1] = False
        jj = np.flatnonzero(mask)
        hit = jj[sat_pairs(np.repeat(polys[i : i + 1], len(jj), axis=0), polys[jj])]
        for j in hit:
            if overlap_area(polys[i], polys[j]) > OVERLAP_AREA:
                overlap[i, j] = overlap[j, i] = True

    fkey = {(tuple(a), tuple(c)): k for k, (a, c) in enumerate(zip(axes.tolist(), c2.tolist()))}

    def face_perm(g):
        a, c = lift.transform(g, np.zeros(n, dtype=np.int64), axes, c2)
        return np.array([fkey[(tuple(x), tuple(y))] for x, y in zip(a.tolist(), c.tolist())])

    sigmas = [g for g in range(1, 2 * lift.h, 2) if np.array_equal(lift.D[g] @ p2, p2)]
    if not sigmas:
        raise DissociationError("no dihedral reflection fixes the seed vertex")
    sigma = face_perm(sigmas[0])
    rot = face_perm(2)

    proj_v = cell.vertices @ lift.P.T
    origin = {tuple(np.rint(2 * v).astype(int)) for v, q in zip(cell.vertices, proj_v) if np.linalg.norm(q) < lift.eps}
    corners = np.array([[1, 1], [-1, 1], [-1, -1], [1, -1]])

    def touches_origin(k):
        i, j = axes[k]
        for si, sj in corners:
            v = c2[k].copy()
            v[i], v[j] = si, sj
            if tuple(v.tolist()) in origin:
                return True
        return False

    must_cover = {k for k in range(nf) if not touches_origin(k)}
    by_pair = {}
    for k, (i, j) in enumerate(axes.tolist()):
        by_pair.setdefault((i, j), []).append(k)
    pairs = sorted(by_pair)

    nodes = 0
    examined = 0
    result = None

    def admissible(chosen):
        nonlocal examined
        examined += 1
        s = set(chosen)
        if any(int(sigma[k]) not in s for k in s):
            return False
        covered, cur = set(), np.array(chosen)
        for _ in range(lift.h):
            covered.update(cur.tolist())
            cur = rot[cur]
        if not must_cover <= covered:
            return False
        idx = np.array(chosen)
        _, _, bad = _seed_rotation(lift, axes[idx], c2[idx], p2)
        return bad is None

    def search(depth, chosen):
        nonlocal nodes, result
        nodes += 1
        if nodes > max_nodes:
            raise DissociationError(f"search exceeded {max_nodes} nodes")
        if depth == len(pairs):
            if admissible(chosen):
                result = list(chosen)
                return True
            return False
        for k in by_pair[pairs[depth]]:
            if not overlap[k, chosen].any():
                chosen.append(k)
                if search(depth + 1, chosen):
                    return True
                chosen.pop()
        return False

    if not search(0, []):
        raise DissociationError(f"no admissible tiling for n={n} (examined {examined} candidates)")

    idx = np.array(result)
    covered, cur = set(), idx.copy()
    for _ in range(lift.h):
        covered.update(cur.tolist())
        cur = rot[cur]
    pv = lift.P @ p
    line = pv / np.linalg.norm(pv)
    base = SubTiling(
        tiles=lift.rhombs(axes[idx], c2[idx]),
        symmetry_line=line,
        rotation_index=0,
        basis=basis,
        seed_vertex=p.copy(),
        diagnostics={
            "face_indices": [int(k) for k in idx],
            "covered_faces": len(covered),
            "total_faces": nf,
            "uncovered_faces": sorted(set(range(nf)) - covered),
            "candidates_examined": examined,
            "search_nodes": nodes,
        },
    )
    return [rotate_subtiling(base, k) for k in range(lift.h)]


def rotation_power(basis: PrincipalBasis, k: int) -> int:
    """Power of the Coxeter element that turns the Coxeter plane by +2 pi k / h."""
    return (basis.rotation_sign() * k) % basis.h


def rotate_subtiling(s: SubTiling, k: int) -> SubTiling:
    """Turn ``s`` counterclockwise about the origin by 2 pi k / h."""
    h = s.h
    lift = _Lift(s.basis)
    axes, c2 = _faces_of(s.tiles, s.n)
    g = 2 * rotation_power(s.basis, k)
    a, c = lift.transform(g, np.zeros(s.n, dtype=np.int64), axes, c2)
    m = rotation_matrix(2 * math.pi * k / h)
    return SubTiling(
        tiles=lift.rhombs(a, c),
        symmetry_line=m @ s.symmetry_line,
        rotation_index=(s.rotation_index + k) % h,
        basis=s.basis,
        seed_vertex=lift.D[g] @ s.seed_vertex,
        diagnostics=dict(s.diagnostics),
    )


# --------------------------------------------------------------------------- patches


@dataclass(frozen=True, eq=False)
class TilingPatch:
    tiles: list[Rhomb]
    center: PlanarPoint
    h: int
    layers: int
    n: int
    center_lift: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)

    def keys(self) -> list[tuple]:
        return sorted(t.key() for t in self.tiles)

    def area(self) -> float:
        return float(sum(_poly_area(t.vertices) for t in self.tiles))


def patch_from_subtiling(s: SubTiling) -> TilingPatch:
    """A single dissociated h-gon as a patch centered at the origin."""
    return TilingPatch(list(s.tiles), PlanarPoint(0.0, 0.0), s.h, 0, s.n, np.zeros(s.n), {"source": "subtiling"})


def seed_rotation_patch(s: SubTiling, vertex) -> TilingPatch:
    """Union of the h rotations of ``s`` about the V(0) vertex ``vertex`` (in R^n).

    The rotations are the affine elements (R^k, p - R^k p); coincident tiles
    are merged and any partial overlap raises :class:`GeometryError`.
    """
    lift = _Lift(s.basis)
    p = np.asarray(vertex, dtype=float)
    p2 = _half_integer_vertex(p, s.n)
    axes, c2 = _faces_of(s.tiles, s.n)
    a, c, bad = _seed_rotation(lift, axes, c2, p2)
    if bad is not None:
        raise GeometryError(f"rotated copies overlap partially (tiles {bad[0]} and {bad[1]})")
    center = lift.P @ p
    return TilingPatch(
        tiles=lift.rhombs(a, c),
        center=PlanarPoint(float(center[0]), float(center[1])),
        h=s.h,
        layers=1,
        n=s.n,
        center_lift=p.copy(),
        diagnostics={"source": "seed-rotation", "tiles": len(a)},
    )


def _candidate_order(lift: _Lift, cands, p):
    pp = lift.P @ p

    def key(c):
        g, t2 = c
        t = np.array(t2) / 2.0
        return (round(float(np.linalg.norm(lift.P @ t - pp)), 9), sum(x * x for x in t2), t2, g)

    return sorted(cands, key=key)


def grow_patch(
    patch: TilingPatch,
    s: SubTiling,
    layers: int,
    group=None,
    workers: int = 1,
    allow_partial: bool = True,
) -> TilingPatch:
    """Add layers of h-gon copies placed by the affine dihedral group.

    A candidate copy of ``s`` is (g, t) with g a point element and t an integer
    translation, obtained by laying a tile of ``s`` onto a tile of the patch.
    Candidates are tried nearest to the center first (then by |t|, t, g) and
    each is taken together with its whole orbit under the dihedral elements
    about the patch center, so the patch stays 2h-fold symmetric. An orbit is
    accepted when its new tiles overlap neither the patch nor each other.

    When no whole-copy orbit fits in a layer, single tiles of the candidate
    copies are tried instead, again with their full orbits. ``diagnostics``
    records which rule each layer used.
    """
    if layers < 0:
        raise ValueError("layers must be >= 0")
    if layers == 0:
        return patch
    if patch.center_lift is None:
        raise ValueError("patch has no lifted center")
    lift = _Lift(s.basis)
    n = s.n
    p = np.asarray(patch.center_lift, dtype=float)
    p2 = np.rint(2 * p).astype(np.int64)
    elements = list(range(len(lift.D)))
    if group is not None:
        index = {m.tobytes(): i for i, m in enumerate(lift.D)}
        elements = sorted(index[np.rint(e.linear).astype(np.int64).tobytes()] for e in group)

    s_axes, s_c2 = _faces_of(s.tiles, n)
    p_axes, p_c2 = _faces_of(patch.tiles, n)
    cent = lift.centroids(p_c2)
    keys = set(lift.keys(p_axes, cent))
    polys = lift.polys(p_axes, cent)
    all_axes, all_c2 = [p_axes], [p_c2]
    orbit_g = np.array(elements)
    orbit_t = p2 - np.einsum("gij,j->gi", lift.D[orbit_g], p2)

    def orbit(cand):
        g, t2 = cand
        t2 = np.array(t2, dtype=np.int64)
        gs = lift.mult[orbit_g, g]
        ts = np.einsum("gij,j->gi", lift.D[orbit_g], t2) + orbit_t
        ax = lift.map_axes(gs[:, None], s_axes[None])
        c = np.einsum("gij,fj->gfi", lift.D[gs], s_c2) + ts[:, None, :]
        return ax, c

    def try_add(ax, c):
        nonlocal polys
        ax, c, new = _dedupe(lift, ax.reshape(-1, 2), c.reshape(-1, n), keys)
        if not new:
            return 0
        q = lift.polys(ax, lift.centroids(c))
        if _first_overlap(q, q, same=True) is not None or _first_overlap(q, polys) is not None:
            return 0
        keys.update(new)
        polys = np.concatenate([polys, q])
        all_axes.append(ax)
        all_c2.append(c)
        return len(new)

    history = []
    done = 0
    for _ in range(layers):
        cur_axes = np.concatenate(all_axes)
        cur_c2 = np.concatenate(all_c2)
        cands = set()
        for gi in elements:
            mapped = lift.map_axes(gi, s_axes)
            moved = s_c2 @ lift.D[gi].T
            for f in range(len(s_axes)):
                hit = np.flatnonzero((cur_axes == mapped[f]).all(axis=1))
                for t2 in (cur_c2[hit] - moved[f]).tolist():
                    cands.add((gi, tuple(t2)))
        order = _candidate_order(lift, cands, p)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                orbits = list(pool.map(orbit, order))
        else:
            orbits = [orbit(c) for c in order]

        before = len(keys)
        accepted = 0
        for ax, c in orbits:
            if try_add(ax, c):
                accepted += 1
        rule = "copy-orbits"
        if accepted == 0:
            rule = "tile-orbits"
            for ax, c in orbits:
                for f in range(len(s_axes)):
                    if try_add(ax[:, f], c[:, f]):
                        accepted += 1
        history.append(
            {"candidates": len(order), "accepted": accepted, "rule": rule, "tiles": len(keys), "added": len(keys) - before}
        )
        if accepted == 0:
            history[-1]["rule"] = "stalled"
            if not allow_partial:
                raise GrowthError(f"no placement fits in layer {done + 1}")
            break
        done += 1

    ax = np.concatenate(all_axes)
    c = np.concatenate(all_c2)
    diagnostics = dict(patch.diagnostics)
    diagnostics.update({"source": "growth", "growth": history, "complete": done == layers})
    return TilingPatch(
        tiles=lift.rhombs(ax, c),
        center=patch.center,
        h=patch.h,
        layers=patch.layers + done,
        n=n,
        center_lift=p.copy(),
        diagnostics=diagnostics,
    )


def build_patch(n: int, layers: int, seed_vertex=None, workers: int = 1) -> TilingPatch:
    """Pipeline used by the command line.

    layers = 0 gives one dissociated h-gon, layers = 1 the seed rotation about
    the seed vertex, and each further layer one growth pass.
    """
    if layers < 0:
        raise ValueError("layers must be >= 0")
    basis = principal_basis(build_root_system(n, BasisChoice.CYCLIC))
    subs = dissociate(voronoi_cell(n), basis, seed_vertex)
    s = subs[0]
    if layers == 0:
        return patch_from_subtiling(s)
    seed = seed_rotation_patch(s, s.seed_vertex)
    return grow_patch(seed, s, layers - 1, workers=workers)


# --------------------------------------------------------------------------- hexagonal case


def hexagonal_generators(basis: PrincipalBasis | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Projections of l_1 and l_3 onto the Coxeter plane of B_3."""
    basis = basis or principal_basis(build_root_system(3, BasisChoice.CYCLIC))
    if basis.n != 3:
        raise ValueError("the hexagonal lattice comes from n = 3")
    P = basis.plane_axes(1)
    return P[:, 0].copy(), P[:, 2].copy()


def hex_distance(a: int, b: int) -> int:
    """Lattice distance of a u + b v for generators u, v at 120 degrees."""
    return max(abs(a), abs(b), abs(a - b))


def hexagonal_lattice(extent: int, basis: PrincipalBasis | None = None) -> TilingPatch:
    """Equilateral triangles of the lattice spanned by the two generators.

    Every triangle whose corners lie within lattice distance ``extent`` of the
    origin is kept, so ``extent = 1`` is the hexagon of six triangles.
    """
    if extent < 1:
        raise ValueError("extent must be >= 1")
    u, v = hexagonal_generators(basis)
    tiles = []
    rng = range(-extent, extent + 1)
    for a, b in itertools.product(rng, rng):
        for tri in (((a, b), (a + 1, b), (a + 1, b + 1)), ((a, b), (a + 1, b + 1), (a, b + 1))):
            if all(hex_distance(x, y) <= extent for x, y in tri):
                pts = np.array([x * u + y * v for x, y in tri])
                tiles.append(Rhomb(counterclockwise(pts), Fraction(1, 3)))
    return TilingPatch(tiles, PlanarPoint(0.0, 0.0), 6, extent, 3, None, {"source": "hexagonal-lattice"})


# --------------------------------------------------------------------------- checks


def dihedral_transforms(h: int, line_angle: float) -> list[np.ndarray]:
    """The 2h planar rotations and reflections; mirrors at line_angle + k pi / h."""
    out = []
    for k in range(h):
        out.append(rotation_matrix(2 * math.pi * k / h))
        out.append(reflection_matrix(line_angle + k * math.pi / h))
    return out


def symmetry_defects(tiles, center, transforms, tol: float = 1e-6, window: float | None = None) -> int:
    """Number of (transform, tile) pairs whose image is not a tile.

    Tiles are matched by centroid and then by vertex set within ``tol``. With
    ``window`` only tiles whose centroid lies within that distance of
    ``center`` are mapped (their images are looked up in the whole set).
    """
    c = np.asarray(center, dtype=float)
    verts = [np.asarray(t.vertices, dtype=float) for t in tiles]
    cents = np.array([v.mean(axis=0) for v in verts])
    src = range(len(tiles))
    if window is not None:
        src = [i for i in src if np.linalg.norm(cents[i] - c) <= window]
    bad = 0
    for m in transforms:
        for i in src:
            img = (verts[i] - c) @ m.T + c
            ic = img.mean(axis=0)
            d = np.linalg.norm(cents - ic, axis=1)
            j = int(np.argmin(d))
            ok = d[j] < tol and len(verts[j]) == len(img)
            if ok:
                ok = all(np.linalg.norm(verts[j] - q, axis=1).min() < tol for q in img)
            bad += not ok
    return bad


def edge_direction_defects(tiles, directions, tol: float = 1e-6) -> int:
    """Count tile edges that are not +- one of ``directions``."""
    dirs = np.asarray(directions, dtype=float)
    bad = 0
    for t in tiles:
        v = np.asarray(t.vertices)
        for e in np.roll(v, -1, axis=0) - v:
            d = np.minimum(np.linalg.norm(dirs - e, axis=1), np.linalg.norm(dirs + e, axis=1))
            bad += d.min() > tol
    return bad


def overlap_defects(tiles) -> int:
    """Number of tile pairs overlapping by more than the area threshold."""
    groups = {}
    for t in tiles:
        groups.setdefault(len(t.vertices), []).append(np.asarray(t.vertices, dtype=float))
    arrays = [np.array(g) for g in groups.values()]
    bad = 0
    for x, a in enumerate(arrays):
        for y, b in enumerate(arrays[x:], start=x):
            alo, ahi = _bbox(a)
            blo, bhi = _bbox(b)
            mask = ((alo[:, None] < bhi[None] - 1e-9) & (blo[None] < ahi[:, None] - 1e-9)).all(axis=-1)
            if x == y:
                mask &= np.triu(np.ones(mask.shape, dtype=bool), 1)
            ii, jj = np.nonzero(mask)
            if len(ii) == 0:
                continue
            hit = sat_pairs(a[ii], b[jj])
            bad += sum(overlap_area(a[i], b[j]) > OVERLAP_AREA for i, j in zip(ii[hit], jj[hit]))
    return bad


def regular_polygon_area(h: int, edge: float) -> float:
    return h * edge * edge / (4 * math.tan(math.pi / h))
