"""Point and affine reflections, and affine group elements (g, lambda).

Two affine reflection formulas are kept side by side. They differ for short
roots by a factor of two in the translation:

* root-lattice form      r_{a,k}(x) = x - 2((x, a) - k) a / (a, a)
* Voronoi-lattice form   r_{a,k}(x) = r_a(x) + k a

For long roots ((a, a) = 2) they coincide; for short roots the Voronoi form at
2k equals the root-lattice form at k. Everything downstream uses the Voronoi
form, whose odd translations reach the half-integer vertex lattice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from qlat.constants import EPS


class ReflectionFormula(enum.Enum):
    ROOT_LATTICE = "root-lattice"
    VORONOI_LATTICE = "voronoi-lattice"


def _root(alpha) -> tuple[np.ndarray, float]:
    alpha = np.asarray(alpha, dtype=float)
    norm2 = float(alpha @ alpha)
    if norm2 < EPS:
        raise ValueError("reflection in the zero vector is undefined")
    return alpha, norm2


def reflect(v, alpha) -> np.ndarray:
    alpha, norm2 = _root(alpha)
    v = np.asarray(v, dtype=float)
    return v - 2.0 * (v @ alpha) / norm2 * alpha


def affine_reflect_root_lattice(v, alpha, k: int) -> np.ndarray:
    alpha, norm2 = _root(alpha)
    v = np.asarray(v, dtype=float)
    return v - 2.0 * ((v @ alpha) - k) / norm2 * alpha


def affine_reflect_voronoi_lattice(v, alpha, k: int) -> np.ndarray:
    alpha, _ = _root(alpha)
    return reflect(v, alpha) + k * alpha


@dataclass(frozen=True, eq=False)
class AffineElement:
    """x -> linear @ x + translation.

    As an (n+1)x(n+1) matrix this is ``[[linear, translation], [0, 1]]``,
    so composition is ordinary matrix multiplication:
    (g1, t1)(g2, t2) = (g1 g2, g1 t2 + t1).
    """

    linear: np.ndarray
    translation: np.ndarray

    @property
    def n(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, n: int) -> AffineElement:
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def pure_translation(cls, t) -> AffineElement:
        t = np.asarray(t, dtype=float)
        return cls(np.eye(len(t)), t)

    @classmethod
    def from_matrix(cls, m) -> AffineElement:
        m = np.asarray(m, dtype=float)
        return cls(m[:-1, :-1].copy(), m[:-1, -1].copy())

    def matrix(self) -> np.ndarray:
        n = self.n
        m = np.eye(n + 1)
        m[:n, :n] = self.linear
        m[:n, n] = self.translation
        return m

    def __matmul__(self, other: AffineElement) -> AffineElement:
        return compose(self, other)

    def __call__(self, v) -> np.ndarray:
        return apply(self, v)

    def inverse(self) -> AffineElement:
        ginv = self.linear.T  # orthogonal
        return AffineElement(ginv, -ginv @ self.translation)

    def power(self, k: int) -> AffineElement:
        if k < 0:
            return self.inverse().power(-k)
        out = AffineElement.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    @property
    def point_part(self) -> AffineElement:
        return AffineElement(self.linear, np.zeros(self.n))

    def is_orthogonal(self, tol: float = 1e-9) -> bool:
        return np.abs(self.linear.T @ self.linear - np.eye(self.n)).max() < tol

    def distance(self, other: AffineElement) -> float:
        return float(np.abs(self.matrix() - other.matrix()).max())

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.distance(AffineElement.identity(self.n)) < tol

    def allclose(self, other: AffineElement, tol: float = 1e-9) -> bool:
        return self.n == other.n and self.distance(other) < tol

    def key(self, decimals: int = 9) -> bytes:
        """Hashable canonical form for deduplicating group elements."""
        m = np.round(self.matrix(), decimals) + 0.0  # folds -0.0
        return m.tobytes()

    def __repr__(self) -> str:
        return f"AffineElement(\n{np.array2string(self.matrix(), precision=6)})"


def compose(a: AffineElement, b: AffineElement) -> AffineElement:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return AffineElement(a.linear @ b.linear, a.linear @ b.translation + a.translation)


def apply(e: AffineElement, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != e.n:
        raise ValueError(f"dimension mismatch: element acts on R^{e.n}, got {v.shape[-1]}")
    return v @ e.linear.T + e.translation


def reflection_element(
    alpha, k: int = 0, formula: ReflectionFormula = ReflectionFormula.VORONOI_LATTICE
) -> AffineElement:
    alpha, norm2 = _root(alpha)
    n = len(alpha)
    g = np.eye(n) - 2.0 * np.outer(alpha, alpha) / norm2
    if formula is ReflectionFormula.VORONOI_LATTICE:
        t = k * alpha
    else:
        t = 2.0 * k / norm2 * alpha
    return AffineElement(g, t)
