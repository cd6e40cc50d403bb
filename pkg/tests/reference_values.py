"""Reference coordinates and matrices used as regression targets.

Coordinates are listed in the reordered principal axes x1, xn, x2, x_{n-1}, ...
"""

import math
from fractions import Fraction as F

import numpy as np

PI = math.pi
TAU = (1 + math.sqrt(5)) / 2

# n -> (vertices, h-gon count or None, origin count, {(acute, obtuse)} as fractions of pi)
TABLE1_ROWS = {
    1: (2, None, 0, set()),
    2: (4, 1, 0, {(F(1, 2), F(1, 2))}),
    3: (8, 1, 2, {(F(1, 3), F(2, 3))}),
    4: (16, 2, 0, {(F(1, 2), F(1, 2)), (F(1, 4), F(3, 4))}),
    5: (32, 3, 2, {(F(1, 5), F(4, 5)), (F(2, 5), F(3, 5))}),
    6: (64, 5, 4, {(F(1, 6), F(5, 6)), (F(1, 3), F(2, 3)), (F(1, 2), F(1, 2))}),
    7: (128, 9, 2, {(F(1, 7), F(6, 7)), (F(2, 7), F(5, 7)), (F(3, 7), F(4, 7))}),
    8: (256, 16, 0, {(F(1, 8), F(7, 8)), (F(1, 4), F(3, 4)), (F(3, 8), F(5, 8)), (F(1, 2), F(1, 2))}),
    9: (512, 28, 8, {(F(1, 9), F(8, 9)), (F(2, 9), F(7, 9)), (F(1, 3), F(2, 3)), (F(4, 9), F(5, 9))}),
    10: (
        1024,
        51,
        4,
        {(F(1, 10), F(9, 10)), (F(1, 5), F(4, 5)), (F(3, 10), F(7, 10)), (F(2, 5), F(3, 5)), (F(1, 2), F(1, 2))},
    ),
}

TABLE1_TEXT_ROW_5 = "5 | 32 | 3 decagons | 2 | (π/5,4π/5),(2π/5,3π/5)"

# simple roots of the cyclic bases (rows alpha_1..alpha_n)
CYCLIC_ROOTS = {
    3: [[0, 1, -1], [-1, 0, 1], [1, 0, 0]],
    4: [[0, 1, -1, 0], [-1, 0, 1, 0], [1, 0, 0, -1], [0, 0, 0, 1]],
    5: [[0, 1, -1, 0, 0], [-1, 0, 1, 0, 0], [1, 0, 0, -1, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, -1]],
}


def _polar(r, *angles):
    out = []
    for a in angles:
        out += [r * math.cos(a * PI), r * math.sin(a * PI)]
    return out


# unit vectors l_1..l_4 in the axes x1, x4, x2, x3 (angles in units of pi)
L_COORDS_4 = np.array(
    [
        _polar(1 / math.sqrt(2), 13 / 16, 7 / 16),
        _polar(1 / math.sqrt(2), 9 / 16, 27 / 16),
        _polar(1 / math.sqrt(2), 5 / 16, 15 / 16),
        _polar(1 / math.sqrt(2), 1 / 16, 3 / 16),
    ]
)

_R5 = math.sqrt(2 / 5)
_M5 = _R5 / math.sqrt(2)
# unit vectors l_1..l_5 in the axes x1, x5, x2, x4, x3
L_COORDS_5 = np.array(
    [
        _polar(_R5, 1 / 4, 3 / 4) + [-_M5],
        _polar(_R5, 9 / 20, 27 / 20) + [_M5],
        _polar(_R5, 13 / 20, 39 / 20) + [-_M5],
        _polar(_R5, 17 / 20, 11 / 20) + [_M5],
        _polar(_R5, 21 / 20, 23 / 20) + [-_M5],
    ]
)


def _refl(a, sign):
    # [[-cos a, sign sin a], [sign sin a, cos a]]
    c, s = math.cos(a), math.sin(a)
    return np.array([[-c, sign * s], [sign * s, c]])


# generator blocks in the reordered principal axes
R_BLOCKS_3 = {
    "R1": [np.array([[-math.sqrt(3) / 2, -0.5], [-0.5, math.sqrt(3) / 2]]), np.array([[-1.0]])],
    "R2": [np.array([[-math.sqrt(3) / 2, 0.5], [0.5, math.sqrt(3) / 2]]), np.array([[1.0]])],
}
R_BLOCKS_4 = {
    "R1": [_refl(PI / 8, 1), _refl(3 * PI / 8, 1)],
    "R2": [_refl(PI / 8, -1), _refl(3 * PI / 8, -1)],
}
R_BLOCKS_5 = {
    "R1": [_refl(PI / 10, -1), _refl(3 * PI / 10, -1), np.array([[-1.0]])],
    "R2": [_refl(PI / 10, 1), _refl(3 * PI / 10, 1), np.array([[1.0]])],
}


def fixed_point_n3(n1, n2, n3):
    return np.array([n1 / 2, n1 / 2 + n2 + n3, n1 / 2 + n3])


def fixed_point_n4(n1, n2, n3, n4):
    return np.array([n3 + n4 / 2, n1 + n2 + n3 + n4 / 2, n2 + n3 + n4 / 2, n4 / 2])


def fixed_point_n5(n1, n2, n3, n4, n5):
    return np.array(
        [n1 + n4 + n5 / 2, n1 + n2 + n3 + n4 + n5 / 2, n1 + n3 + n4 + n5 / 2, n4 + n5 / 2, n5 / 2]
    )


# label tuples -> offsets of alpha_1..alpha_n in the cyclic bases
def offsets_n3(n1, n2, n3):
    return [n2, n3, n1]


def offsets_n4(n1, n2, n3, n4):
    return [n1, n2, n3, n4]


def offsets_n5(n1, n2, n3, n4, n5):
    # offsets for which the closed form holds; alpha_5 = -l_5 flips the sign of n5
    return [n2, n3, n1, n4 + n5, -n5]
