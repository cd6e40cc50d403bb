"""Simple roots, extended root and Cartan matrix of B_n.

Vectors live in the orthonormal basis l_1..l_n, so a root is just a length-n
float array. Two orderings of the simple roots are provided:

* ``STANDARD``: alpha_i = l_i - l_{i+1} (i < n), alpha_n = l_n.
* ``CYCLIC``: a signed reordering for which the bipartite Coxeter element
  R = R1 R2 acts as l_1 -> l_2 -> ... -> l_n -> -l_1. For n = 3, 4, 5 it is
  the tabulated choice below; for other n it is constructed by
  :func:`cyclic_simple_roots`.

Cartan convention: ``C[i, j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)``.
B_n is not simply laced, so C is asymmetric; for the standard ordering the
short-root corner reads ``C[n-2, n-1] = -2`` and ``C[n-1, n-2] = -1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from qlat.constants import EPS


class BasisChoice(enum.Enum):
    STANDARD = "standard"
    CYCLIC = "cyclic"


# alpha_i as signed index lists: (+1, i) is l_i, (-1, i) is -l_i (1-based)
_TABULATED_CYCLIC = {
    3: [[(1, 2), (-1, 3)], [(1, 3), (-1, 1)], [(1, 1)]],
    4: [[(1, 2), (-1, 3)], [(1, 3), (-1, 1)], [(1, 1), (-1, 4)], [(1, 4)]],
    5: [
        [(1, 2), (-1, 3)],
        [(1, 3), (-1, 1)],
        [(1, 1), (-1, 4)],
        [(1, 4), (1, 5)],
        [(-1, 5)],
    ],
}


def unit(n: int, i: int) -> np.ndarray:
    """The basis vector l_i (1-based)."""
    v = np.zeros(n)
    v[i - 1] = 1.0
    return v


def coroot(alpha) -> np.ndarray:
    """2 alpha / (alpha, alpha)."""
    alpha = np.asarray(alpha, dtype=float)
    norm2 = float(alpha @ alpha)
    if norm2 < EPS:
        raise ValueError("coroot of the zero vector is undefined")
    return 2.0 * alpha / norm2


def cartan_matrix(roots) -> np.ndarray:
    """Integer Cartan matrix ``C[i, j] = 2 (a_i, a_j) / (a_j, a_j)``.

    Raises ValueError when the roots are dependent or an entry is not an
    integer, i.e. when they cannot be the simple roots of a crystallographic
    system.
    """
    roots = np.atleast_2d(np.asarray(roots, dtype=float))
    if np.linalg.matrix_rank(roots, tol=1e-9) < len(roots):
        raise ValueError("roots are linearly dependent")
    gram = roots @ roots.T
    c = 2.0 * gram / np.diag(gram)[None, :]
    ci = np.rint(c)
    if np.abs(c - ci).max() > 1e-9:
        raise ValueError(f"non-integral Cartan entries:\n{c}")
    return ci.astype(int)


def _signed_position(n: int, j: int) -> np.ndarray:
    # position j on the 2n-cycle l_1, ..., l_n, -l_1, ..., -l_n
    j %= 2 * n
    return unit(n, j + 1) if j < n else -unit(n, j - n + 1)


def _positive(v: np.ndarray) -> np.ndarray:
    return v if v[np.flatnonzero(np.abs(v) > EPS)[0]] > 0 else -v


def _mirror_roots(n: int, c: int) -> list[np.ndarray]:
    """Roots of the involution j -> c - j on the 2n-cycle of signed unit vectors.

    The map is a signed permutation that reverses the cycle. Every swapped pair
    {j, c - j} is a reflection: in the short root l when the two positions are
    +-l, in a long root otherwise. Antipodal pairs give the same root once.
    """
    out: list[np.ndarray] = []
    for j in range(2 * n):
        k = (c - j) % (2 * n)
        if k == j:
            continue
        if (k - j) % (2 * n) == n:
            root = _signed_position(n, j)
        else:
            root = _signed_position(n, j) - _signed_position(n, k)
        root = _positive(root)
        if not any(np.array_equal(root, r) for r in out):
            out.append(root)
    return out


def cyclic_simple_roots(n: int) -> np.ndarray:
    """Simple roots whose bipartite Coxeter element is the signed n-cycle.

    Let P be the signed permutation l_i -> l_{i+1}, l_n -> -l_1. Writing
    P = R1 R2 with R1 : j -> 3 - j and R2 : j -> 2 - j acting on the 2n-cycle
    of signed unit vectors, each involution factors into reflections in
    mutually orthogonal roots. Those n roots form a B_n path in the Coxeter
    graph; reading the path from the long end to the short root and choosing
    signs so adjacent roots have negative inner product gives the ordering.
    For n = 3, 4, 5 this reproduces the tabulated bases exactly.
    """
    if n < 1:
        raise ValueError("rank must be positive")
    pool = _mirror_roots(n, 3) + _mirror_roots(n, 2)
    if len(pool) != n:
        raise ValueError(f"expected {n} mirror roots, found {len(pool)}")
    shorts = [r for r in pool if abs(r @ r - 1.0) < EPS]
    if len(shorts) != 1:
        raise ValueError("expected exactly one short root")
    path = [shorts[0]]
    remaining = [r for r in pool if r is not shorts[0]]
    while remaining:
        nxt = [r for r in remaining if abs(r @ path[-1]) > EPS]
        if len(nxt) != 1:
            raise ValueError("mirror roots do not form a B_n chain")
        path.append(nxt[0])
        remaining = [r for r in remaining if r is not nxt[0]]
    path.reverse()
    roots = [_positive(path[0])]
    for r in path[1:]:
        roots.append(r if roots[-1] @ r < 0 else -r)
    return np.array(roots)


def _tabulated(n: int) -> np.ndarray:
    rows = []
    for terms in _TABULATED_CYCLIC[n]:
        v = np.zeros(n)
        for sign, i in terms:
            v[i - 1] += sign
        rows.append(v)
    return np.array(rows)


def standard_simple_roots(n: int) -> np.ndarray:
    roots = np.zeros((n, n))
    for i in range(n - 1):
        roots[i, i], roots[i, i + 1] = 1.0, -1.0
    roots[n - 1, n - 1] = 1.0
    return roots


def bn_cartan(n: int) -> np.ndarray:
    """The B_n Cartan matrix in the standard ordering."""
    return cartan_matrix(standard_simple_roots(n))


@dataclass(frozen=True, eq=False)
class RootSystem:
    n: int
    simple_roots: np.ndarray  # row i is alpha_{i+1}
    extended_root: np.ndarray
    cartan: np.ndarray
    basis_choice: BasisChoice

    @property
    def h(self) -> int:
        """Coxeter number of B_n."""
        return 2 * self.n

    @property
    def coroots(self) -> np.ndarray:
        return np.array([coroot(a) for a in self.simple_roots])

    @property
    def highest_root(self) -> np.ndarray:
        return -self.extended_root

    def root(self, i: int) -> np.ndarray:
        """alpha_i, 1-based; alpha_0 is the extended root."""
        return self.extended_root if i == 0 else self.simple_roots[i - 1]


def build_root_system(n: int, basis_choice: BasisChoice = BasisChoice.STANDARD) -> RootSystem:
    if n < 1:
        raise ValueError("rank must be at least 1")
    if basis_choice is BasisChoice.STANDARD:
        roots = standard_simple_roots(n)
    elif n in _TABULATED_CYCLIC:
        roots = _tabulated(n)
    else:
        roots = cyclic_simple_roots(n)
    cartan = cartan_matrix(roots)
    if not np.array_equal(cartan, bn_cartan(n)):
        raise ValueError(f"roots do not realise the B_{n} diagram")
    if basis_choice is BasisChoice.CYCLIC and not _is_cyclic(roots):
        raise ValueError(f"cyclic basis for n={n} failed the signed-cycle check")
    # highest root of B_n in simple-root coordinates: (1, 2, 2, ..., 2)
    marks = np.full(n, 2.0)
    marks[0] = 1.0
    highest = marks @ roots
    return RootSystem(
        n=n,
        simple_roots=roots,
        extended_root=-highest,
        cartan=cartan,
        basis_choice=basis_choice,
    )


def _is_cyclic(roots: np.ndarray) -> bool:
    n = len(roots)
    r1, r2 = np.eye(n), np.eye(n)
    for i, a in enumerate(roots):
        m = np.eye(n) - np.outer(a, a) * 2.0 / (a @ a)
        if i % 2 == 0:
            r1 = r1 @ m
        else:
            r2 = r2 @ m
    r = r1 @ r2
    return all(
        np.allclose(r @ _signed_position(n, j), _signed_position(n, j + 1), atol=EPS)
        for j in range(2 * n)
    )
