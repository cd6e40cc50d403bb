"""Principal planes of B_n from the eigenvectors of its Cartan matrix.

For each Coxeter exponent m_i = 2i - 1 the Cartan matrix has the eigenvalue
lambda_i = 2 (1 + cos(m_i pi / h)). With the right eigenvector X_i scaled so its
last component is 1, the vectors

    x_i = (h lambda_i)^(-1/2) * sum_j X_ji * coroot(alpha_j)

are orthonormal. Axes pair up as (x_i, x_{n+1-i}) into principal planes;
plane 1, (x_1, x_n), is the Coxeter plane. For odd n the middle axis is left
unpaired.

In the oriented pair (x_i, x_{n+1-i}) the Coxeter element R1 R2 turns by
+2 pi m_i / h for odd n and by -2 pi m_i / h for even n. The magnitude is the
same either way; only the handedness of the pair differs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from qlat.reflections import AffineElement
from qlat.roots import RootSystem


class PlanarPoint(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True, eq=False)
class PrincipalBasis:
    roots: RootSystem
    exponents: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column i is X_i, last component 1
    axes: np.ndarray  # row i is x_{i+1} in l-coordinates

    @property
    def n(self) -> int:
        return self.roots.n

    @property
    def h(self) -> int:
        return 2 * self.roots.n

    @property
    def plane_pairs(self) -> list[tuple[int, int]]:
        """1-based axis pairs (i, n+1-i)."""
        n = self.n
        return [(i, n + 1 - i) for i in range(1, n // 2 + 1)]

    @property
    def middle_axis(self) -> int | None:
        return (self.n + 1) // 2 if self.n % 2 else None

    def plane_axes(self, plane_index: int = 1) -> np.ndarray:
        """2 x n matrix whose rows are the two axes of the plane."""
        pairs = self.plane_pairs
        if not 1 <= plane_index <= len(pairs):
            raise ValueError(
                f"plane index {plane_index} out of range for n={self.n} "
                f"(valid: 1..{len(pairs)})"
            )
        i, j = pairs[plane_index - 1]
        return self.axes[[i - 1, j - 1]]

    def axis_order(self) -> list[int]:
        """0-based axis order x_1, x_n, x_2, x_{n-1}, ..., [middle]."""
        order = []
        for i, j in self.plane_pairs:
            order += [i - 1, j - 1]
        if self.middle_axis is not None:
            order.append(self.middle_axis - 1)
        return order

    def exponent_of_plane(self, plane_index: int) -> int:
        return int(self.exponents[self.plane_pairs[plane_index - 1][0] - 1])

    def rotation_sign(self) -> int:
        """Sense of the Coxeter element's turn in each oriented principal plane."""
        return 1 if self.n % 2 else -1


def cartan_eigenpairs(cartan: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Numerical eigenvalues and right eigenvectors, sorted by descending value."""
    w, v = np.linalg.eig(np.asarray(cartan, dtype=float))
    if np.abs(w.imag).max() > 1e-9:
        raise np.linalg.LinAlgError("Cartan matrix has complex eigenvalues")
    order = np.argsort(-w.real)
    return w.real[order], v.real[:, order]


def principal_basis(rs: RootSystem) -> PrincipalBasis:
    n, h = rs.n, rs.h
    exponents = np.arange(1, 2 * n, 2)
    expected = 2.0 * (1.0 + np.cos(exponents * np.pi / h))
    values, vectors = cartan_eigenpairs(rs.cartan)
    # exponents ascending <-> eigenvalues descending; B_n eigenvalues are simple
    if np.abs(values - expected).max() > 1e-9:
        raise np.linalg.LinAlgError(f"unexpected Cartan spectrum {values}")
    if n > 1 and np.min(np.abs(np.diff(values))) < 1e-9:
        raise np.linalg.LinAlgError("degenerate Cartan spectrum")
    if np.abs(vectors[-1]).min() < 1e-12:
        raise np.linalg.LinAlgError("eigenvector with vanishing last component")
    x = vectors / vectors[-1][None, :]
    axes = (rs.coroots.T @ x).T / np.sqrt(h * expected)[:, None]
    return PrincipalBasis(
        roots=rs,
        exponents=exponents,
        eigenvalues=expected,
        eigenvectors=x,
        axes=axes,
    )


def project(v, basis: PrincipalBasis, plane_index: int = 1) -> PlanarPoint:
    p = basis.plane_axes(plane_index) @ np.asarray(v, dtype=float)
    return PlanarPoint(float(p[0]), float(p[1]))


def project_many(vs, basis: PrincipalBasis, plane_index: int = 1) -> np.ndarray:
    """Rows of ``vs`` projected to a (k, 2) array."""
    return np.asarray(vs, dtype=float) @ basis.plane_axes(plane_index).T


def projected_units(basis: PrincipalBasis, plane_index: int = 1) -> np.ndarray:
    """Row j is the projection of l_{j+1}."""
    return basis.plane_axes(plane_index).T.copy()


def conjugate_linear(e: AffineElement, basis: PrincipalBasis) -> np.ndarray:
    """Linear part of ``e`` in the reordered principal axes."""
    p = basis.axes[basis.axis_order()]
    return p @ e.linear @ p.T


def block_diagonalize(e: AffineElement, basis: PrincipalBasis, tol: float = 1e-9) -> list[np.ndarray]:
    """2x2 blocks per principal plane, plus the 1x1 middle block for odd n."""
    m = conjugate_linear(e, basis)
    n = basis.n
    mask = np.zeros((n, n), dtype=bool)
    blocks = []
    for p in range(n // 2):
        s = slice(2 * p, 2 * p + 2)
        blocks.append(m[s, s].copy())
        mask[s, s] = True
    if n % 2:
        blocks.append(m[-1:, -1:].copy())
        mask[-1, -1] = True
    residual = np.abs(m[~mask]).max() if (~mask).any() else 0.0
    if residual > tol:
        raise ValueError(f"element is not block diagonal in the principal axes (residual {residual:.3g})")
    return blocks


def rotation_angle(block: np.ndarray) -> float:
    """Signed angle of a 2x2 rotation block, in (-pi, pi]."""
    return math.atan2(block[1, 0], block[0, 0])


def beta_roots(basis: PrincipalBasis, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Simple roots of the dihedral group acting in principal plane i."""
    n, h = basis.n, basis.h
    if not 1 <= i <= n // 2:
        raise ValueError(f"beta roots are defined for 1 <= i <= {n // 2}")
    m = basis.exponents[i - 1]
    s, c = math.sin(m * math.pi / (2 * h)), math.cos(m * math.pi / (2 * h))
    xi, xj = basis.axes[i - 1], basis.axes[n - i]
    return math.sqrt(2) * (s * xi + c * xj), math.sqrt(2) * (s * xi - c * xj)


def rotation_aligning(u, v) -> np.ndarray:
    """The planar rotation taking direction ``u`` to direction ``v``."""
    a = math.atan2(v[1], v[0]) - math.atan2(u[1], u[0])
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s], [s, c]])
