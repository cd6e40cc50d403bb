"""Convex polygon helpers: signed area, clipping, overlap tests, planar motions."""

from __future__ import annotations

import math

import numpy as np

from qlat.constants import OVERLAP_AREA


def signed_area(poly) -> float:
    p = np.asarray(poly, dtype=float)
    if len(p) < 3:
        return 0.0
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def area(poly) -> float:
    return abs(signed_area(poly))


def counterclockwise(poly) -> np.ndarray:
    p = np.asarray(poly, dtype=float)
    return p if signed_area(p) >= 0 else p[::-1].copy()


def _intersect(s, e, a, b):
    d1 = e - s
    d2 = b - a
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0.0:
        return e.copy()
    t = ((a[0] - s[0]) * d2[1] - (a[1] - s[1]) * d2[0]) / den
    return s + t * d1


def clip_convex(subject, clipper) -> np.ndarray:
    """Sutherland-Hodgman: part of ``subject`` inside convex ``clipper``."""
    out = [np.asarray(p, dtype=float) for p in subject]
    clip = counterclockwise(clipper)
    for idx in range(len(clip)):
        if not out:
            break
        a, b = clip[idx - 1], clip[idx]
        inp, out = out, []

        def inside(p):
            return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0.0

        s = inp[-1]
        for e in inp:
            if inside(e):
                if not inside(s):
                    out.append(_intersect(s, e, a, b))
                out.append(e)
            elif inside(s):
                out.append(_intersect(s, e, a, b))
            s = e
    return np.array(out).reshape(-1, 2)


def overlap_area(p, q) -> float:
    return area(clip_convex(p, q))


def _axes(polys: np.ndarray) -> np.ndarray:
    # outward-agnostic edge normals, shape (N, k, 2)
    edges = np.roll(polys, -1, axis=1) - polys
    normals = np.stack([-edges[..., 1], edges[..., 0]], axis=-1)
    return normals / np.linalg.norm(normals, axis=-1, keepdims=True)


def sat_candidates(p: np.ndarray, qs: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Boolean mask over ``qs`` of convex polygons whose interiors may meet ``p``.

    Separating-axis test with a penetration tolerance: polygons that only
    share boundary points are separated. ``p`` is (k, 2), ``qs`` is (N, m, 2).
    """
    if len(qs) == 0:
        return np.zeros(0, dtype=bool)
    p = np.asarray(p, dtype=float)
    ap = _axes(p[None])[0]  # (k, 2)
    aq = _axes(qs)  # (N, m, 2)
    hit = np.ones(len(qs), dtype=bool)
    # axes of p
    pp = p @ ap.T  # (k_vertices, k_axes)
    pmin, pmax = pp.min(axis=0), pp.max(axis=0)
    qp = qs @ ap.T  # (N, m, k_axes)
    qmin, qmax = qp.min(axis=1), qp.max(axis=1)
    hit &= ~((qmax <= pmin + tol) | (pmax <= qmin + tol)).any(axis=1)
    # axes of each q
    qq = np.einsum("nmd,nad->nma", qs, aq)
    qmin, qmax = qq.min(axis=1), qq.max(axis=1)
    pq = np.einsum("kd,nad->nka", p, aq)
    pmin, pmax = pq.min(axis=1), pq.max(axis=1)
    hit &= ~((qmax <= pmin + tol) | (pmax <= qmin + tol)).any(axis=1)
    return hit


def sat_pairs(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Row-wise separating-axis test: may ``a[k]`` and ``b[k]`` overlap?"""
    if len(a) == 0:
        return np.zeros(0, dtype=bool)
    axes = np.concatenate([_axes(a), _axes(b)], axis=1)
    pa = np.einsum("kvd,kad->kva", a, axes)
    pb = np.einsum("kvd,kad->kva", b, axes)
    sep = (pa.max(axis=1) <= pb.min(axis=1) + tol) | (pb.max(axis=1) <= pa.min(axis=1) + tol)
    return ~sep.any(axis=1)


def overlapping(p, qs, threshold: float = OVERLAP_AREA) -> np.ndarray:
    """Indices of polygons in ``qs`` overlapping ``p`` with area above ``threshold``."""
    qs = np.asarray(qs, dtype=float)
    idx = np.flatnonzero(sat_candidates(np.asarray(p, dtype=float), qs))
    return np.array([i for i in idx if overlap_area(p, qs[i]) > threshold], dtype=int)


def rotation_matrix(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def reflection_matrix(line_angle: float) -> np.ndarray:
    """Reflection across the line through the origin at ``line_angle``."""
    c, s = math.cos(2 * line_angle), math.sin(2 * line_angle)
    return np.array([[c, s], [s, -c]])


def transform_points(points, m: np.ndarray, center=(0.0, 0.0)) -> np.ndarray:
    c = np.asarray(center, dtype=float)
    return (np.asarray(points, dtype=float) - c) @ m.T + c


def canonical_key(vertices, eps: float) -> tuple:
    """Order-independent key of a polygon on a grid of spacing ``eps``."""
    grid = np.rint(np.asarray(vertices, dtype=float) / eps).astype(np.int64)
    return tuple(sorted(map(tuple, grid.tolist())))
