"""The Voronoi cell V(0) of Z^n and its projection onto a principal plane.

V(0) is the unit cube with vertices (1/2)(+-1, ..., +-1). Its square 2-faces are
indexed by a pair of free axes and a sign for each remaining axis. Projected
onto the Coxeter plane, the vertices split into orbits of the Coxeter element
(concentric h-gons) plus a few that land on the origin, and every square
becomes a rhomb whose acute angle is a multiple of pi/n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from qlat.constants import eps_geo
from qlat.coxeter import PrincipalBasis, principal_basis, project_many
from qlat.dihedral import dihedral_generators
from qlat.geometry import canonical_key, counterclockwise
from qlat.reflections import AffineElement
from qlat.roots import BasisChoice, build_root_system

MAX_N = 12


@dataclass(frozen=True, eq=False)
class Face2:
    """A square 2-face of a lattice translate of V(0).

    ``free_axes`` are 0-based; ``center`` has half-integer entries off the
    free axes and zeros on them (for V(0) itself).
    """

    free_axes: tuple[int, int]
    center: np.ndarray

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def vertices(self) -> np.ndarray:
        i, j = self.free_axes
        ei = np.zeros(self.n)
        ej = np.zeros(self.n)
        ei[i] = ej[j] = 0.5
        c = self.center
        return np.array([c + ei + ej, c - ei + ej, c - ei - ej, c + ei - ej])

    def transformed(self, e: AffineElement) -> Face2:
        """Image under an element whose linear part is a signed permutation."""
        i, j = self.free_axes
        gi = int(np.argmax(np.abs(e.linear[:, i])))
        gj = int(np.argmax(np.abs(e.linear[:, j])))
        return Face2((min(gi, gj), max(gi, gj)), e.linear @ self.center + e.translation)

    def key(self) -> tuple:
        return (self.free_axes, tuple(np.rint(2 * self.center).astype(int).tolist()))


def angle_label(frac: Fraction, symbol: str = "π") -> str:
    """Fraction of pi as text: 1/5 -> 'π/5', 4/5 -> '4π/5', 1 -> 'π'."""
    num = "" if frac.numerator == 1 else str(frac.numerator)
    if frac.denominator == 1:
        return f"{num}{symbol}"
    return f"{num}{symbol}/{frac.denominator}"


@dataclass(frozen=True, eq=False)
class Rhomb:
    """A planar tile: vertices in counterclockwise order plus its acute angle.

    ``angle_class`` is the smallest interior angle as a fraction of pi. The
    hexagonal-lattice patch reuses this type for equilateral triangles.
    """

    vertices: np.ndarray
    angle_class: Fraction
    source: Face2 | None = None

    @property
    def kind(self) -> str:
        if len(self.vertices) != 4:
            return "other"
        if self.angle_class == Fraction(1, 2):
            return "square"
        if self.angle_class < Fraction(1, 3):
            return "thin"
        return "thick"

    @property
    def label(self) -> str:
        return angle_label(self.angle_class, "pi")

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def key(self, eps: float | None = None) -> tuple:
        return canonical_key(self.vertices, eps_geo() if eps is None else eps)

    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def moved(self, m: np.ndarray, center=(0.0, 0.0), source: Face2 | None = None) -> Rhomb:
        c = np.asarray(center, dtype=float)
        pts = (self.vertices - c) @ m.T + c
        return Rhomb(counterclockwise(pts), self.angle_class, source)


def snap_angle(angle: float, h: int, tol: float = 1e-9) -> Fraction:
    """Snap an angle in radians to the nearest multiple of pi/(2h)."""
    k = round(angle / (math.pi / (2 * h)))
    if abs(angle - k * math.pi / (2 * h)) > tol:
        raise ValueError(f"angle {angle} is not a multiple of pi/{2 * h}")
    return Fraction(k, 2 * h)


def acute_angle(u, v) -> float:
    c = abs(float(np.dot(u, v))) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(min(1.0, c))


def rhomb_from_face(face: Face2, plane_axes: np.ndarray, h: int) -> Rhomb:
    pts = face.vertices @ plane_axes.T
    i, j = face.free_axes
    ang = acute_angle(plane_axes[:, i], plane_axes[:, j])
    return Rhomb(counterclockwise(pts), snap_angle(ang, h), face)


@dataclass(frozen=True, eq=False)
class VoronoiCell:
    n: int
    vertices: np.ndarray  # (2^n, n), index bits big-endian, bit 1 = +1/2
    face_axes: np.ndarray  # (F, 2), 0-based free axes
    face_centers: np.ndarray  # (F, n)

    @cached_property
    def faces2d(self) -> list[Face2]:
        return [Face2((int(a), int(b)), c) for (a, b), c in zip(self.face_axes, self.face_centers)]

    def vertex_index(self, v) -> int:
        bits = (np.asarray(v) > 0).astype(int)
        return int(bits @ (1 << np.arange(self.n - 1, -1, -1)))


def voronoi_cell(n: int) -> VoronoiCell:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}")
    vertices = np.array(list(itertools.product((-0.5, 0.5), repeat=n)))
    axes, centers = [], []
    for i, j in itertools.combinations(range(n), 2):
        others = [k for k in range(n) if k not in (i, j)]
        for signs in itertools.product((-0.5, 0.5), repeat=n - 2):
            c = np.zeros(n)
            c[others] = signs
            axes.append((i, j))
            centers.append(c)
    return VoronoiCell(
        n=n,
        vertices=vertices,
        face_axes=np.array(axes, dtype=int).reshape(-1, 2),
        face_centers=np.array(centers).reshape(-1, n),
    )


@dataclass
class Orbit:
    radius: float
    vertex_indices: list[int]


@dataclass
class OrbitReport:
    n: int
    h: int
    plane_index: int
    orbits: list[Orbit]
    origin_indices: list[int]
    points: np.ndarray = field(repr=False)

    @property
    def polygon_count(self) -> int:
        return len(self.orbits)

    @property
    def origin_count(self) -> int:
        return len(self.origin_indices)

    def radius_groups(self, eps: float | None = None) -> list[tuple[float, int]]:
        """Distinct radii (descending) with the number of h-gons at each.

        Separate orbits can share a radius (from n = 6 on), so a radius group
        may hold more than one h-gon.
        """
        eps = eps_geo() if eps is None else eps
        groups: list[list] = []
        for orb in sorted(self.orbits, key=lambda o: -o.radius):
            if groups and abs(groups[-1][0] - orb.radius) < eps:
                groups[-1][1] += 1
            else:
                groups.append([orb.radius, 1])
        return [(r, c) for r, c in groups]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "plane": self.plane_index,
            "polygon_count": self.polygon_count,
            "origin_count": self.origin_count,
            "radius_groups": [{"radius": r, "polygons": c} for r, c in self.radius_groups()],
            "orbits": [{"radius": o.radius, "vertices": o.vertex_indices} for o in self.orbits],
        }


def coxeter_vertex_permutation(cell: VoronoiCell, basis: PrincipalBasis) -> np.ndarray:
    """perm[i] = index of R v_i for the Coxeter element R = R1 R2."""
    r1, r2 = dihedral_generators(basis.roots)
    r = (r1 @ r2).linear
    images = cell.vertices @ r.T
    bits = (images > 0).astype(np.int64)
    return bits @ (1 << np.arange(cell.n - 1, -1, -1))


def project_voronoi(cell: VoronoiCell, basis: PrincipalBasis, plane_index: int = 1) -> OrbitReport:
    if basis.n != cell.n:
        raise ValueError("cell and basis dimensions differ")
    pts = project_many(cell.vertices, basis, plane_index)
    radii = np.linalg.norm(pts, axis=1)
    eps = eps_geo()
    origin = [int(i) for i in np.flatnonzero(radii < eps)]
    perm = coxeter_vertex_permutation(cell, basis)
    seen = np.zeros(len(pts), dtype=bool)
    seen[origin] = True
    orbits = []
    for start in range(len(pts)):
        if seen[start]:
            continue
        members, i = [], start
        while not seen[i]:
            seen[i] = True
            members.append(i)
            i = int(perm[i])
        orbits.append(Orbit(float(radii[members].mean()), sorted(members)))
    orbits.sort(key=lambda o: (-round(o.radius / eps), o.vertex_indices[0]))
    return OrbitReport(cell.n, basis.h, plane_index, orbits, origin, pts)


def face_angle_classes(cell: VoronoiCell, basis: PrincipalBasis, plane_index: int = 1) -> list[Fraction]:
    """Acute angle (fraction of pi) of every projected 2-face, in face order."""
    axes = basis.plane_axes(plane_index)
    u = axes[:, cell.face_axes[:, 0]].T
    v = axes[:, cell.face_axes[:, 1]].T
    cross = np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    if len(cross) and cross.min() < eps_geo():
        raise ValueError("a 2-face projects to a degenerate rhomb")
    cosines = np.abs(np.einsum("ij,ij->i", u, v)) / (
        np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1)
    )
    angles = np.arccos(np.clip(cosines, 0.0, 1.0))
    cache: dict[float, Fraction] = {}
    out = []
    for a in angles:
        key = round(float(a), 12)
        if key not in cache:
            cache[key] = snap_angle(float(a), basis.h)
        out.append(cache[key])
    return out


def rhomb_classes(cell: VoronoiCell, basis: PrincipalBasis, plane_index: int = 1) -> list[tuple[Fraction, Fraction]]:
    """Distinct (acute, obtuse) angle pairs, ascending, as fractions of pi."""
    acute = sorted(set(face_angle_classes(cell, basis, plane_index)))
    return [(a, 1 - a) for a in acute]


_POLYGON_NAMES = {4: "square", 6: "hexagon", 8: "octagon", 10: "decagon", 12: "dodecagon"}


def polygon_name(h: int, count: int) -> str:
    if h == 4 and count == 1:
        return "square"
    if h in _POLYGON_NAMES:
        name = _POLYGON_NAMES[h]
        return f"{count} {name}" + ("s" if count != 1 else "")
    return f"{count} {h}-gon" + ("s" if count != 1 else "")


@dataclass
class Table1Row:
    n: int
    vertex_count: int
    polygon_count: int | None
    polygon_label: str
    origin_count: int
    angle_classes: list[tuple[Fraction, Fraction]]

    def angle_text(self, symbol: str = "π") -> str:
        if not self.angle_classes:
            return "-"
        return ",".join(f"({angle_label(a, symbol)},{angle_label(b, symbol)})" for a, b in self.angle_classes)

    def format(self) -> str:
        origin = str(self.origin_count) if self.origin_count else "none"
        return f"{self.n} | {self.vertex_count} | {self.polygon_label} | {origin} | {self.angle_text()}"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": self.vertex_count,
            "polygons": self.polygon_count,
            "polygon_label": self.polygon_label,
            "origin": self.origin_count,
            "angles": [[angle_label(a, "pi"), angle_label(b, "pi")] for a, b in self.angle_classes],
        }


def table1_row(n: int) -> Table1Row:
    cell = voronoi_cell(n)
    if n == 1:
        # the Coxeter "plane" of B_1 is a line; V(0) is the segment [-1/2, 1/2]
        return Table1Row(1, 2, None, "line-segment", 0, [])
    basis = principal_basis(build_root_system(n, BasisChoice.CYCLIC))
    report = project_voronoi(cell, basis)
    return Table1Row(
        n=n,
        vertex_count=len(cell.vertices),
        polygon_count=report.polygon_count,
        polygon_label=polygon_name(basis.h, report.polygon_count),
        origin_count=report.origin_count,
        angle_classes=rhomb_classes(cell, basis),
    )


def table1(max_n: int) -> list[Table1Row]:
    if not 1 <= max_n <= MAX_N:
        raise ValueError(f"max_n must be in 1..{MAX_N}")
    return [table1_row(n) for n in range(1, max_n + 1)]
