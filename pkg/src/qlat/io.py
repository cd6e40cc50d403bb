"""JSON documents for patches and SVG rendering of tiles and projections.

Numbers are written with 15 significant digits and SVG coordinates with a
fixed number of decimals, so repeated runs give byte-identical files.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from qlat.coxeter import PlanarPoint
from qlat.voronoi import Rhomb

SCHEMA_VERSION = 1
PX_PER_UNIT = 100.0
KIND_COLORS = {
    "thin": "#e07b39",
    "thick": "#3b7dd8",
    "square": "#6ab04c",
    "other": "#c9c9c9",
}
KINDS = tuple(KIND_COLORS)


def sig15(x: float) -> float:
    return float(f"{float(x):.15g}") + 0.0


def parse_angle(text: str) -> Fraction:
    """Inverse of the 'kpi/m' labels: 'pi/5' -> 1/5, '2pi/5' -> 2/5, 'pi' -> 1."""
    num, _, den = text.partition("pi")
    k = int(num) if num else 1
    m = int(den.lstrip("/")) if den else 1
    return Fraction(k, m)


@dataclass
class TileRecord:
    vertices: list[tuple[float, float]]
    angle_class: str
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown tile kind {self.kind!r}")


@dataclass
class PatchDocument:
    n: int
    h: int
    center: tuple[float, float]
    tiles: list[TileRecord]
    layers: int = 0
    schema_version: int = SCHEMA_VERSION
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_patch(cls, patch, meta: dict | None = None) -> PatchDocument:
        tiles = [
            TileRecord([(sig15(x), sig15(y)) for x, y in t.vertices], t.label, t.kind)
            for t in patch.tiles
        ]
        c = (sig15(patch.center[0]), sig15(patch.center[1]))
        return cls(patch.n, patch.h, c, tiles, patch.layers, SCHEMA_VERSION, dict(meta or {}))

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "n": self.n,
            "h": self.h,
            "layers": self.layers,
            "center": list(self.center),
            "meta": self.meta,
            "tiles": [
                {"vertices": [list(v) for v in t.vertices], "angle_class": t.angle_class, "kind": t.kind}
                for t in self.tiles
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> PatchDocument:
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version!r}")
        tiles = [
            TileRecord([(float(x), float(y)) for x, y in t["vertices"]], t["angle_class"], t["kind"])
            for t in d["tiles"]
        ]
        return cls(
            n=int(d["n"]),
            h=int(d["h"]),
            center=(float(d["center"][0]), float(d["center"][1])),
            tiles=tiles,
            layers=int(d.get("layers", 0)),
            schema_version=version,
            meta=dict(d.get("meta", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> PatchDocument:
        return cls.from_dict(json.loads(text))

    def rhombs(self) -> list[Rhomb]:
        return [Rhomb(np.array(t.vertices), parse_angle(t.angle_class)) for t in self.tiles]

    @property
    def center_point(self) -> PlanarPoint:
        return PlanarPoint(*self.center)


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    """Maps plane coordinates to SVG pixels (y flipped, fixed margin)."""

    def __init__(self, points: np.ndarray, margin: float = 20.0):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            pts = np.zeros((1, 2))
        self.lo = pts.min(axis=0)
        self.hi = pts.max(axis=0)
        self.margin = margin
        self.width = (self.hi[0] - self.lo[0]) * PX_PER_UNIT + 2 * margin
        self.height = (self.hi[1] - self.lo[1]) * PX_PER_UNIT + 2 * margin

    def xy(self, p) -> tuple[str, str]:
        x = (p[0] - self.lo[0]) * PX_PER_UNIT + self.margin
        y = (self.hi[1] - p[1]) * PX_PER_UNIT + self.margin
        return _fmt(x), _fmt(y)

    def header(self, title: str) -> list[str]:
        w, h = _fmt(self.width), _fmt(self.height)
        return [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
            f"<title>{escape(title)}</title>",
            f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        ]


def tiles_svg(tiles, title: str = "tiling", center=None) -> str:
    """One <polygon> per tile, filled by tile kind."""
    canvas = _Canvas(np.concatenate([np.asarray(t.vertices) for t in tiles]) if tiles else [])
    lines = canvas.header(title)
    lines.append('<g stroke="black" stroke-width="1" stroke-linejoin="round">')
    for t in tiles:
        pts = " ".join(",".join(canvas.xy(v)) for v in t.vertices)
        lines.append(f'<polygon class="{t.kind}" data-angle="{t.label}" points="{pts}" fill="{KIND_COLORS[t.kind]}"/>')
    lines.append("</g>")
    if center is not None:
        cx, cy = canvas.xy(center)
        lines.append(f'<circle class="center" cx="{cx}" cy="{cy}" r="3" fill="red"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def projection_svg(points: np.ndarray, edges, title: str = "projection", radius: float = 3.0) -> str:
    """Projected vertices as circles and cell edges as lines."""
    canvas = _Canvas(points)
    lines = canvas.header(title)
    lines.append('<g stroke="#555555" stroke-width="0.8">')
    for i, j in edges:
        x1, y1 = canvas.xy(points[i])
        x2, y2 = canvas.xy(points[j])
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    lines.append("</g>")
    lines.append('<g fill="black">')
    for k, p in enumerate(points):
        cx, cy = canvas.xy(p)
        lines.append(f'<circle class="vertex" data-index="{k}" cx="{cx}" cy="{cy}" r="{radius:g}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cube_edges(n: int) -> list[tuple[int, int]]:
    """Edges of V(0) as index pairs (vertex indices differ in one sign bit)."""
    out = []
    for i in range(2**n):
        for b in range(n):
            j = i ^ (1 << b)
            if i < j:
                out.append((i, j))
    return out


def write_text(path: str, text: str) -> None:
    """Write ``text`` to ``path``, or to standard output when ``path`` is '-'."""
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
