"""Affine dihedral subgroups of W_a(B_n) and the rhombic tilings they generate."""

__version__ = "0.1.0"
