import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qlat.coxeter import (
    PlanarPoint,
    beta_roots,
    block_diagonalize,
    principal_basis,
    project,
    project_many,
    projected_units,
    rotation_aligning,
    rotation_angle,
)
from qlat.dihedral import dihedral_generators
from qlat.reflections import reflection_element
from qlat.roots import BasisChoice, build_root_system
from reference_values import L_COORDS_4, L_COORDS_5, R_BLOCKS_3, R_BLOCKS_4, R_BLOCKS_5


def wrap(a):
    return (a + math.pi) % (2 * math.pi) - math.pi


def reordered(basis):
    """Row i: l_{i+1} in the axes x1, xn, x2, x_{n-1}, ..."""
    return basis.axes[basis.axis_order()].T


@pytest.mark.parametrize("n", range(1, 11))
def test_cartan_spectrum_matches_exponents(n, cyclic):
    rs = cyclic(n)
    m = np.arange(1, 2 * n, 2)
    want = np.sort(2 * (1 + np.cos(m * math.pi / (2 * n))))
    got = np.sort(np.linalg.eigvals(rs.cartan.astype(float)).real)
    assert np.allclose(got, want, atol=1e-9)


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("choice", list(BasisChoice))
def test_axes_are_orthonormal(n, choice):
    b = principal_basis(build_root_system(n, choice))
    assert np.allclose(b.axes @ b.axes.T, np.eye(n), atol=1e-9)


@pytest.mark.parametrize("n", range(2, 11))
def test_coxeter_element_turns_each_plane_by_its_exponent(n, basis):
    b = basis(n)
    r1, r2 = dihedral_generators(b.roots)
    blocks = block_diagonalize(r1 @ r2, b)
    for i in range(n // 2):
        m = b.exponents[i]
        got = rotation_angle(blocks[i])
        want = b.rotation_sign() * 2 * math.pi * m / b.h
        assert abs(wrap(got - want)) < 1e-9
        assert np.allclose(blocks[i] @ blocks[i].T, np.eye(2))
    if n % 2:
        assert blocks[-1][0, 0] == pytest.approx(-1.0)


@pytest.mark.parametrize("n", range(2, 9))
def test_generators_are_plane_reflections(n, basis):
    b = basis(n)
    r1, r2 = dihedral_generators(b.roots)
    for r in (r1, r2):
        for blk in block_diagonalize(r, b)[: n // 2]:
            assert np.linalg.det(blk) == pytest.approx(-1.0)
            assert np.allclose(blk @ blk, np.eye(2))


def test_unaligned_blocks_for_n3(basis):
    b = basis(3)
    r1, r2 = dihedral_generators(b.roots)
    for name, r in (("R1", r1), ("R2", r2)):
        for got, want in zip(block_diagonalize(r, b), R_BLOCKS_3[name]):
            assert np.allclose(got, want, atol=1e-9)


@pytest.mark.parametrize("n,coords,blocks", [(4, L_COORDS_4, R_BLOCKS_4), (5, L_COORDS_5, R_BLOCKS_5)])
def test_reference_coordinates_after_one_rotation_per_plane(n, coords, blocks, basis):
    b = basis(n)
    ours = reordered(b)
    r1, r2 = dihedral_generators(b.roots)
    gens = {"R1": block_diagonalize(r1, b), "R2": block_diagonalize(r2, b)}
    for p in range(n // 2):
        s = slice(2 * p, 2 * p + 2)
        a = rotation_aligning(ours[0, s], coords[0, s])
        assert np.linalg.det(a) == pytest.approx(1.0)
        assert np.allclose(ours[:, s] @ a.T, coords[:, s], atol=1e-9)
        for name in ("R1", "R2"):
            assert np.allclose(a @ gens[name][p] @ a.T, blocks[name][p], atol=1e-9)
    if n % 2:
        assert np.allclose(ours[:, -1], coords[:, -1], atol=1e-9)
        for name in ("R1", "R2"):
            assert np.allclose(gens[name][-1], blocks[name][-1])


def test_projected_unit_relations_n4(basis):
    l1, l2, l3, l4 = projected_units(basis(4))
    t, s = math.tan(math.pi / 8), math.sqrt(2)
    assert np.allclose(l2 - l4, s * l1, atol=1e-12)
    assert np.allclose(l1 + l3, s * l2, atol=1e-12)
    assert np.allclose(l2 + l4, s * l3, atol=1e-12)
    assert np.allclose(l3 - l1, s * l4, atol=1e-12)
    assert np.allclose(l2 - l3, t * (l1 - l4), atol=1e-12)
    assert np.allclose(l1 + l4, t * (l2 + l3), atol=1e-12)
    assert np.allclose(l2 - l1, t * (l3 + l4), atol=1e-12)
    assert np.allclose(l3 - l4, t * (l1 + l2), atol=1e-12)
    assert abs(l1 @ l3) < 1e-12 and abs(l2 @ l4) < 1e-12


@pytest.mark.parametrize("n", range(2, 11))
def test_projected_units_form_a_regular_star(n, basis):
    u = projected_units(basis(n))
    norms = np.linalg.norm(u, axis=1)
    assert np.allclose(norms, math.sqrt(2 / n))
    # consecutive +-l_i are 2 pi / h apart in the Coxeter plane
    star = np.concatenate([u, -u])
    ang = np.arctan2(star[:, 1], star[:, 0])
    steps = [wrap(ang[(i + 1) % (2 * n)] - ang[i]) for i in range(2 * n)]
    assert np.allclose(np.abs(steps), math.pi / n)
    assert len({np.sign(s) for s in steps}) == 1


def test_hexagonal_relation_n3(basis):
    l1, l2, l3 = projected_units(basis(3))
    assert np.allclose(l2, l1 + l3)
    assert l1 @ l1 == pytest.approx(2 / 3, abs=1e-12)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_beta_roots_generate_the_plane_rotation(n, basis):
    b = basis(n)
    for i in range(1, n // 2 + 1):
        b1, b2 = beta_roots(b, i)
        assert b1 @ b1 == pytest.approx(2.0) and b2 @ b2 == pytest.approx(2.0)
        rot = (reflection_element(b1) @ reflection_element(b2)).linear
        axes = b.plane_axes(i)
        blk = axes @ rot @ axes.T
        assert abs(abs(rotation_angle(blk)) - 2 * math.pi * b.exponents[i - 1] / b.h) < 1e-9
    with pytest.raises(ValueError):
        beta_roots(b, n // 2 + 1)


@given(arrays(float, 5, elements=st.floats(-5, 5, allow_nan=False)))
def test_projection_is_linear_and_commutes_with_the_rotation(v):
    b = principal_basis(build_root_system(5, BasisChoice.CYCLIC))
    r1, r2 = dihedral_generators(b.roots)
    r = r1 @ r2
    p = np.array(project(v, b))
    pr = np.array(project(r(v), b))
    ang = b.rotation_sign() * 2 * math.pi / b.h
    rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
    assert np.allclose(pr, rot @ p, atol=1e-9)
    assert np.allclose(project_many(np.array([v, 2 * v]), b)[1], 2 * p)


def test_plane_index_errors(basis):
    b = basis(4)
    with pytest.raises(ValueError):
        b.plane_axes(3)
    with pytest.raises(ValueError):
        b.plane_axes(0)
    assert isinstance(project(np.ones(4), b, 2), PlanarPoint)
