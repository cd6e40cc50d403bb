"""The dihedral subgroup W(I2(h)) of W(B_n), h = 2n, and its affine extension.

R1 is the product of the reflections in the odd-indexed simple roots and R2 the
product over the even-indexed ones. Within each product the roots are mutually
orthogonal, so the factors commute and both are involutions. Affine versions
attach one integer offset per simple root (Voronoi-lattice reflection formula).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from qlat.reflections import AffineElement, ReflectionFormula, reflection_element
from qlat.roots import RootSystem


def dihedral_generators(rs: RootSystem, offsets=None) -> tuple[AffineElement, AffineElement]:
    """Affine generators (R1, R2); ``offsets[i]`` is the integer k of alpha_{i+1}."""
    n = rs.n
    offsets = [0] * n if offsets is None else [int(k) for k in offsets]
    if len(offsets) != n:
        raise ValueError(f"expected {n} offsets, got {len(offsets)}")
    r1 = AffineElement.identity(n)
    r2 = AffineElement.identity(n)
    for i, (alpha, k) in enumerate(zip(rs.simple_roots, offsets)):
        r = reflection_element(alpha, k, ReflectionFormula.VORONOI_LATTICE)
        if i % 2 == 0:
            r1 = r1 @ r
        else:
            r2 = r2 @ r
    return r1, r2


def coxeter_element(r1: AffineElement, r2: AffineElement) -> AffineElement:
    return r1 @ r2


def reflection_elements(r1: AffineElement, r2: AffineElement, h: int) -> list[AffineElement]:
    """The h involutions R1, R2, (R1 R2)^i R1 for i = 1..h-2."""
    r = r1 @ r2
    out = [r1, r2]
    ri = AffineElement.identity(r1.n)
    for _ in range(1, h - 1):
        ri = ri @ r
        out.append(ri @ r1)
    return out


def dihedral_elements(r1: AffineElement, r2: AffineElement, h: int) -> list[AffineElement]:
    """All 2h elements in the fixed order R^0, R^0 R1, R^1, R^1 R1, ..."""
    r = r1 @ r2
    out = []
    ri = AffineElement.identity(r1.n)
    for _ in range(h):
        out.append(ri)
        out.append(ri @ r1)
        ri = ri @ r
    return out


def extended_generator(r1: AffineElement, r2: AffineElement, n: int) -> AffineElement:
    """R_{0,1} = (R1 R2)^n R1, the extra node of the extended I2(h) diagram."""
    return (r1 @ r2).power(n) @ r1


def h_prime(h: int) -> Fraction:
    """Mark 2h/(h-2) on the extended node of the I2(h) diagram."""
    if h < 4:
        raise ValueError("h' is defined for h >= 4")
    return Fraction(2 * h, h - 2)


def affine_cartan_determinant(h: int, hp) -> float:
    """det of the 3x3 Cartan-like matrix of the extended I2(h) diagram.

    The chain is R0 -(h')- R1 -(h)- R2; the determinant vanishes exactly when
    cos^2(pi/h) + cos^2(pi/h') = 1, i.e. h' = 2h/(h-2).
    """
    a = -2.0 * np.cos(np.pi / float(hp))
    b = -2.0 * np.cos(np.pi / h)
    m = np.array([[2.0, a, 0.0], [a, 2.0, b], [0.0, b, 2.0]])
    return float(np.linalg.det(m))


def group_closure(gens: list[AffineElement], limit: int = 100_000) -> list[AffineElement]:
    """Closure of a finite set of point elements under composition."""
    n = gens[0].n
    seen = {AffineElement.identity(n).key(): AffineElement.identity(n)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                k = b.key()
                if k not in seen:
                    seen[k] = b
                    nxt.append(b)
                    if len(seen) > limit:
                        raise RuntimeError("group closure exceeded limit; group is infinite?")
        frontier = nxt
    return list(seen.values())


def order_of(e: AffineElement, max_order: int = 1000, tol: float = 1e-9) -> int:
    p = e
    for k in range(1, max_order + 1):
        if p.is_identity(tol):
            return k
        p = p @ e
    raise RuntimeError(f"order exceeds {max_order}")


def fixed_point(rs: RootSystem, offsets) -> np.ndarray:
    """The unique point fixed by both affine generators.

    Solves (g - I) x = -t for R1 and R2 stacked. The point parts have no common
    fixed vector (the Coxeter element has no eigenvalue 1), so the solution is
    unique.
    """
    r1, r2 = dihedral_generators(rs, offsets)
    n = rs.n
    a = np.vstack([r1.linear - np.eye(n), r2.linear - np.eye(n)])
    b = -np.concatenate([r1.translation, r2.translation])
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.abs(a @ x - b).max() > 1e-9:
        raise RuntimeError("generators share no fixed point")
    return x + 0.0


@dataclass(frozen=True, eq=False)
class DihedralData:
    roots: RootSystem
    r1: AffineElement
    r2: AffineElement
    offsets: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.roots.n

    @property
    def h(self) -> int:
        return 2 * self.roots.n

    @property
    def coxeter(self) -> AffineElement:
        return coxeter_element(self.r1, self.r2)

    @property
    def reflections(self) -> list[AffineElement]:
        return reflection_elements(self.r1, self.r2, self.h)

    @property
    def elements(self) -> list[AffineElement]:
        return dihedral_elements(self.r1, self.r2, self.h)

    @property
    def extended(self) -> AffineElement:
        return extended_generator(self.r1, self.r2, self.n)

    @property
    def h_prime(self) -> Fraction:
        return h_prime(self.h)


def dihedral_data(rs: RootSystem, offsets=None) -> DihedralData:
    r1, r2 = dihedral_generators(rs, offsets)
    offs = tuple([0] * rs.n if offsets is None else [int(k) for k in offsets])
    return DihedralData(roots=rs, r1=r1, r2=r2, offsets=offs)
