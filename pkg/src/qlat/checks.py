"""Invariant checks run by ``qlat verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from qlat.coxeter import block_diagonalize, principal_basis, projected_units, rotation_angle
from qlat.dihedral import (
    affine_cartan_determinant,
    dihedral_data,
    dihedral_generators,
    fixed_point,
    group_closure,
    h_prime,
)
from qlat.reflections import AffineElement, reflection_element
from qlat.roots import BasisChoice, bn_cartan, build_root_system
from qlat.voronoi import table1_row

F = Fraction
# n -> (h-gon count, origin count, acute angles / pi)
TABLE1 = {
    2: (1, 0, [F(1, 2)]),
    3: (1, 2, [F(1, 3)]),
    4: (2, 0, [F(1, 4), F(1, 2)]),
    5: (3, 2, [F(1, 5), F(2, 5)]),
    6: (5, 4, [F(1, 6), F(1, 3), F(1, 2)]),
    7: (9, 2, [F(1, 7), F(2, 7), F(3, 7)]),
    8: (16, 0, [F(1, 8), F(1, 4), F(3, 8), F(1, 2)]),
    9: (28, 8, [F(1, 9), F(2, 9), F(1, 3), F(4, 9)]),
    10: (51, 4, [F(1, 10), F(1, 5), F(3, 10), F(2, 5), F(1, 2)]),
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _run(name, fn) -> Check:
    try:
        ok, detail = fn()
        return Check(name, bool(ok), detail)
    except Exception as exc:  # a crashing check is a failed check
        return Check(name, False, f"{type(exc).__name__}: {exc}")


def group_checks(n: int) -> list[Check]:
    rs = build_root_system(n, BasisChoice.CYCLIC)
    d = dihedral_data(rs)
    ident = AffineElement.identity(n)
    h = d.h
    checks = [
        _run("Cartan matrix is B_n", lambda: (np.array_equal(rs.cartan, bn_cartan(n)), "")),
        _run("R1 and R2 are involutions", lambda: ((d.r1 @ d.r1).is_identity() and (d.r2 @ d.r2).is_identity(), "")),
    ]

    def coxeter_order():
        powers = [d.coxeter.power(k).is_identity() for k in range(1, h + 1)]
        return powers[-1] and not any(powers[:-1]), f"h={h}"

    checks.append(_run("Coxeter element has order h", coxeter_order))

    def cycle():
        r = d.coxeter.linear
        seq = [np.eye(n)[i] for i in range(n)] + [-np.eye(n)[i] for i in range(n)]
        return all(np.allclose(r @ seq[i], seq[(i + 1) % h]) for i in range(h)), "l_1 -> l_2 -> ... -> -l_1"

    checks.append(_run("Coxeter element permutes l_i cyclically", cycle))
    checks.append(_run("extended generator is an involution", lambda: ((d.extended @ d.extended).is_identity(), "")))

    def closure():
        size = len(group_closure([d.r1.point_part, d.r2.point_part]))
        # for n = 1 the even product is empty, so only {I, R1} remains
        want = 2 if n == 1 else 2 * h
        return size == want, f"{size} elements"

    checks.append(_run("dihedral closure size", closure))
    checks.append(_run("reflection elements are involutions", lambda: (all((r @ r).is_identity() for r in d.reflections), "")))
    if h >= 4:
        checks.append(
            _run(
                "extended-diagram determinant vanishes at h'",
                lambda: (abs(affine_cartan_determinant(h, h_prime(h))) < 1e-9, f"h'={h_prime(h)}"),
            )
        )
    return checks


def translation_checks() -> list[Check]:
    """n = 1: two affine reflections compose to a unit translation."""
    alpha = np.array([1.0])

    def law():
        t = reflection_element(alpha, 1) @ reflection_element(alpha, 0)
        ok = np.allclose(t.linear, 1.0) and np.allclose(t.translation, alpha)
        return ok, f"translation {t.translation.tolist()}"

    return [_run("r_(a,1) r_a is translation by one unit", law)]


def eigen_checks(n: int) -> list[Check]:
    rs = build_root_system(n, BasisChoice.CYCLIC)
    b = principal_basis(rs)

    def spectrum():
        w = np.sort(np.linalg.eigvals(rs.cartan).real)
        want = np.sort(2 * (1 + np.cos(b.exponents * math.pi / b.h)))
        return np.abs(w - want).max() < 1e-9, ""

    def orthonormal():
        err = np.abs(b.axes @ b.axes.T - np.eye(n)).max()
        return err < 1e-9, f"max error {err:.1e}"

    def angles():
        r1, r2 = dihedral_generators(rs)
        blocks = block_diagonalize(r1 @ r2, b)
        errs = []
        for i, blk in enumerate(blocks[: n // 2]):
            want = b.rotation_sign() * 2 * math.pi * b.exponents[i] / b.h
            diff = (rotation_angle(blk) - want + math.pi) % (2 * math.pi) - math.pi
            errs.append(abs(diff))
        if n % 2:
            errs.append(abs(blocks[-1][0, 0] + 1))
        return max(errs, default=0.0) < 1e-9, ""

    return [
        _run("Cartan eigenvalues 2(1+cos(m pi/h))", spectrum),
        _run("principal axes orthonormal", orthonormal),
        _run("Coxeter element turns plane i by 2 pi m_i / h", angles),
    ]


def table_checks(n: int) -> list[Check]:
    if n not in TABLE1:
        return []

    def row():
        r = table1_row(n)
        polys, origin, acute = TABLE1[n]
        got = (r.polygon_count, r.origin_count, [a for a, _ in r.angle_classes])
        return got == (polys, origin, acute) and r.vertex_count == 2**n, r.format()

    return [_run("Voronoi projection row", row)]


def octagonal_checks() -> list[Check]:
    rs = build_root_system(4, BasisChoice.CYCLIC)
    r1, r2 = dihedral_generators(rs)
    r = r1 @ r2
    l = np.eye(4)

    def rr(a, c):
        return (reflection_element(a) @ reflection_element(c)).linear

    def factorizations():
        want = {
            0: rr(l[1] - l[2], l[0] - l[3]),
            1: rr(l[3] - l[1], l[0]),
            2: rr(l[0] + l[1], l[2] - l[3]),
            3: rr(l[2] + l[0], l[1]),
            4: rr(l[1] + l[2], l[0] + l[3]),
            5: rr(l[1] + l[3], l[2]),
            6: rr(-l[0] + l[1], l[2] + l[3]),
        }
        ok = all(np.allclose(r.power(k).linear @ r1.linear, m) for k, m in want.items())
        ok &= np.allclose(r2.linear, rr(l[2] - l[0], l[3]))
        return ok, "8 reflections as products of two commuting reflections"

    def relations():
        p = projected_units(principal_basis(rs))
        l1, l2, l3, l4 = p
        t, s = math.tan(math.pi / 8), math.sqrt(2)
        pairs = [
            (l2 - l4, s * l1),
            (l1 + l3, s * l2),
            (l2 + l4, s * l3),
            (l3 - l1, s * l4),
            (l2 - l3, t * (l1 - l4)),
            (l1 + l4, t * (l2 + l3)),
            (l2 - l1, t * (l3 + l4)),
            (l3 - l4, t * (l1 + l2)),
        ]
        err = max(np.abs(a - c).max() for a, c in pairs)
        return err < 1e-12, f"max error {err:.1e}"

    return [
        _run("reflection factorizations (n=4)", factorizations),
        _run("projected unit-vector relations (n=4)", relations),
    ]


def fixed_point_checks(n: int, samples: int = 20) -> list[Check]:
    rs = build_root_system(n, BasisChoice.CYCLIC)
    rng = np.random.default_rng(0)

    def invariant():
        worst = 0.0
        for _ in range(samples):
            k = rng.integers(-5, 6, size=n)
            lam = fixed_point(rs, k)
            r1, r2 = dihedral_generators(rs, k)
            worst = max(worst, np.abs(r1(lam) - lam).max(), np.abs(r2(lam) - lam).max())
        return worst < 1e-12, f"{samples} random offsets"

    return [_run("affine generators fix the solved point", invariant)]


def tiling_checks(n: int) -> list[Check]:
    from qlat.tiling import (
        dissociate,
        edge_direction_defects,
        overlap_defects,
        regular_polygon_area,
        seed_rotation_patch,
    )
    from qlat.voronoi import voronoi_cell

    b = principal_basis(build_root_system(n, BasisChoice.CYCLIC))
    state = {}

    def dissociation():
        subs = dissociate(voronoi_cell(n), b)
        state["s"] = subs[0]
        s = subs[0]
        want = regular_polygon_area(2 * n, math.sqrt(2 / n))
        ok = overlap_defects(s.tiles) == 0 and abs(s.area() - want) < 1e-8
        return ok, f"{len(s.tiles)} tiles, area {s.area():.12f}"

    def seed():
        s = state["s"]
        p = seed_rotation_patch(s, s.seed_vertex)
        ok = overlap_defects(p.tiles) == 0 and edge_direction_defects(p.tiles, projected_units(b)) == 0
        return ok, f"{len(p.tiles)} tiles"

    return [_run("dissociation tiles the outer h-gon", dissociation), _run("seed rotation is overlap-free", seed)]


def verify(n: int) -> list[Check]:
    if not 1 <= n <= 10:
        raise ValueError("verify supports 1 <= n <= 10")
    checks = group_checks(n)
    if n == 1:
        return checks + translation_checks()
    checks += eigen_checks(n) + table_checks(n) + fixed_point_checks(n)
    if n == 4:
        checks += octagonal_checks()
    if n in (3, 4, 5):
        checks += tiling_checks(n)
    return checks
