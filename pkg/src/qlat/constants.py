"""Numerical tolerances shared by every module."""

import os

# algebraic identities (reflections, group relations, orthonormality)
EPS = 1e-12

# geometric deduplication of projected points and tiles
DEFAULT_EPS_GEO = 1e-6

# two tiles overlap when their intersection area exceeds this
OVERLAP_AREA = 1e-8


def eps_geo() -> float:
    """Geometric tolerance, overridable through ``QLAT_EPS_GEO``."""
    raw = os.environ.get("QLAT_EPS_GEO")
    if not raw:
        return DEFAULT_EPS_GEO
    value = float(raw)
    if not value > 0:
        raise ValueError(f"QLAT_EPS_GEO must be positive, got {raw!r}")
    return value
