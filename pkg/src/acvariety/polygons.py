"""Polygons generated by ``p_{i+1} = a_i p_i - p_{i-1}``.

When the coefficients lie on ``AC_n`` the chain closes after ``n`` steps and
every triangle ``(0, p_i, p_{i+1})`` has the same signed area, so the origin
is an area center.  Exact mode keeps coordinates as ``Fraction``; float mode
is used for the regular stars.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .polyalg import as_scalar

FLOAT_TOL = 1e-9


class DegenerateBasis(ValueError):
    code = "DEGENERATE_BASIS"


@dataclass(frozen=True)
class Point2:
    x: object
    y: object

    def __add__(self, o: "Point2") -> "Point2":
        return Point2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point2") -> "Point2":
        return Point2(self.x - o.x, self.y - o.y)

    def scale(self, k) -> "Point2":
        return Point2(k * self.x, k * self.y)

    def cross(self, o: "Point2"):
        """``[p, q]``: twice the signed area of the triangle (0, p, q)."""
        return self.x * o.y - self.y * o.x

    def as_tuple(self):
        return (self.x, self.y)

    @classmethod
    def of(cls, xy, exact: bool = True) -> "Point2":
        x, y = xy
        return cls(as_scalar(x), as_scalar(y)) if exact else cls(float(x), float(y))


def det(p: Point2, q: Point2):
    return p.cross(q)


def _close(a, b, exact: bool) -> bool:
    return a == b if exact else abs(a - b) < FLOAT_TOL


@dataclass(frozen=True)
class PolygonChain:
    """Vertices ``p_0 .. p_{n-1}`` plus the two overshoot points used for the closure test."""

    vertices: tuple[Point2, ...]
    coeffs: tuple
    mode: str
    overshoot: tuple[Point2, Point2]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @property
    def closed(self) -> bool:
        pn, pn1 = self.overshoot
        p0, p1 = self.vertices[0], self.vertices[1 % self.n]
        return all(_close(a, b, self.exact) for a, b in zip(pn.as_tuple() + pn1.as_tuple(),
                                                            p0.as_tuple() + p1.as_tuple()))

    def closure_residual(self) -> float:
        pn, pn1 = self.overshoot
        p0, p1 = self.vertices[0], self.vertices[1 % self.n]
        return float(max(abs(a - b) for a, b in zip(pn.as_tuple() + pn1.as_tuple(),
                                                     p0.as_tuple() + p1.as_tuple())))

    def to_json(self) -> dict:
        fmt = str if self.exact else float
        return {
            "mode": self.mode,
            "coeffs": [fmt(a) for a in self.coeffs],
            "vertices": [[fmt(p.x), fmt(p.y)] for p in self.vertices],
            "closed": self.closed,
            "areas": [fmt(a) for a in area_report(self).areas],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolygonChain":
        exact = data["mode"] == "exact"
        conv = as_scalar if exact else float
        coeffs = [conv(a) for a in data["coeffs"]]
        verts = [Point2(conv(x), conv(y)) for x, y in data["vertices"]]
        return synthesize(coeffs, verts[0], verts[1], mode=data["mode"])


def synthesize(coeffs: Sequence, p0, p1, mode: str = "exact") -> PolygonChain:
    """Run the recurrence for ``len(coeffs)`` steps starting from ``p0, p1``."""
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    conv = as_scalar if exact else float
    coeffs = tuple(conv(a) for a in coeffs)
    if len(coeffs) < 3:
        raise ValueError("a polygon needs at least 3 coefficients")
    p0 = p0 if isinstance(p0, Point2) else Point2.of(p0, exact)
    p1 = p1 if isinstance(p1, Point2) else Point2.of(p1, exact)
    if exact:
        p0, p1 = Point2.of(p0.as_tuple()), Point2.of(p1.as_tuple())
    if _close(p0.cross(p1), 0, exact):
        raise DegenerateBasis("p0 and p1 are linearly dependent")
    pts = [p0, p1]
    for i in range(1, len(coeffs) + 1):
        pts.append(pts[i].scale(coeffs[i - 1]) - pts[i - 1])
    n = len(coeffs)
    return PolygonChain(tuple(pts[:n]), coeffs, mode, (pts[n], pts[n + 1]))


@dataclass(frozen=True)
class AreaReport:
    areas: tuple
    common: object
    max_deviation: float

    @property
    def equal(self) -> bool:
        return self.common is not None


def area_report(p: PolygonChain) -> AreaReport:
    """``[p_i, p_{i+1}]`` for every edge, wrapping back to ``p_0``.

    ``common`` is set only when all areas agree and are nonzero.
    """
    v = p.vertices
    areas = tuple(v[i].cross(v[(i + 1) % p.n]) for i in range(p.n))
    ref = v[0].cross(v[1])
    dev = float(max(abs(a - ref) for a in areas))
    same = all(_close(a, ref, p.exact) for a in areas) and not _close(ref, 0, p.exact)
    return AreaReport(areas, ref if same else None, dev)


# --- quadrilaterals ---------------------------------------------------------------

class QuadCenter(str, Enum):
    DIAGONAL_02_BISECTED = "DIAGONAL_02_BISECTED"
    DIAGONAL_13_BISECTED = "DIAGONAL_13_BISECTED"
    NONE = "NONE"


@dataclass(frozen=True)
class QuadReport:
    kind: QuadCenter
    center: Point2 | None
    degenerate: tuple[str, ...]

    @property
    def has_center(self) -> bool:
        return self.kind is not QuadCenter.NONE


def _collinear(a: Point2, b: Point2, c: Point2, exact: bool) -> bool:
    return _close((b - a).cross(c - a), 0, exact)


def quad_classify(p0, p1, p2, p3) -> QuadReport:
    """Does the quadrilateral have an area center, and which diagonal gives it.

    The center exists when the midpoint of one diagonal lies on the line of
    the other; the center is then the midpoint of that other diagonal.
    """
    raw = [p0, p1, p2, p3]
    exact = all(not isinstance(c, float) for p in raw for c in (p.as_tuple() if isinstance(p, Point2) else p))
    pts = [p if isinstance(p, Point2) else Point2.of(p, exact) for p in raw]
    if exact:
        pts = [Point2.of(p.as_tuple()) for p in pts]
    a, b, c, d = pts
    degenerate = tuple(name for name, tri in (("012", (a, b, c)), ("123", (b, c, d)), ("230", (c, d, a)),
                                              ("301", (d, a, b))) if _collinear(*tri, exact))
    half = Fraction(1, 2) if exact else 0.5
    m02 = (a + c).scale(half)
    m13 = (b + d).scale(half)
    candidates = []
    if _collinear(b, d, m02, exact):
        candidates.append((QuadCenter.DIAGONAL_02_BISECTED, m13))
    if _collinear(a, c, m13, exact):
        candidates.append((QuadCenter.DIAGONAL_13_BISECTED, m02))
    for kind, center in candidates:
        # the common area must also be nonzero
        shifted = [p - center for p in pts]
        areas = [shifted[i].cross(shifted[(i + 1) % 4]) for i in range(4)]
        if not _close(areas[0], 0, exact) and all(_close(x, areas[0], exact) for x in areas):
            return QuadReport(kind, center, degenerate)
    return QuadReport(QuadCenter.NONE, None, degenerate)


# --- regular stars --------------------------------------------------------------

def star_admissible(n: int, k: int) -> bool:
    return n >= 3 and 1 <= k <= n - 1 and 2 * k != n


def regular_star(n: int, k: int) -> PolygonChain:
    """The ``{n/k}`` star: every coefficient is ``2 cos(2 pi k / n)``."""
    if not star_admissible(n, k):
        raise ValueError(f"(n, k) = ({n}, {k}) is outside 1 <= k <= n-1, k != n/2")
    theta = 2 * math.pi * k / n
    c = 2 * math.cos(theta)
    return synthesize([c] * n, Point2(1.0, 0.0), Point2(math.cos(theta), math.sin(theta)), mode="float")


# --- output -------------------------------------------------------------------

def _f(v) -> float:
    return float(v)


def to_svg(p: PolygonChain, size: int = 400) -> str:
    """SVG 1.1: shaded fan of triangles from the origin, the polygon outline, and an origin marker."""
    xs = [_f(v.x) for v in p.vertices] + [0.0]
    ys = [-_f(v.y) for v in p.vertices] + [0.0]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    m = 0.05 * span
    box = (lo_x - m, lo_y - m, hi_x - lo_x + 2 * m, hi_y - lo_y + 2 * m)
    stroke = span / 200
    pt = lambda v: f"{_f(v.x) + 0.0:.6g},{0.0 - _f(v.y):.6g}"  # noqa: E731
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{box[0]:.6g} {box[1]:.6g} {box[2]:.6g} {box[3]:.6g}">',
    ]
    for i, v in enumerate(p.vertices):
        w = p.vertices[(i + 1) % p.n]
        shade = "#4a90d9" if i % 2 == 0 else "#9cc3ec"
        lines.append(f'  <polygon class="triangle" points="0,0 {pt(v)} {pt(w)}" fill="{shade}" '
                     f'fill-opacity="0.35" stroke="none"/>')
    outline = " ".join(pt(v) for v in p.vertices)
    lines.append(f'  <polygon class="outline" points="{outline}" fill="none" stroke="#222" '
                 f'stroke-width="{stroke:.6g}"/>')
    lines.append(f'  <circle class="origin" cx="0" cy="0" r="{3 * stroke:.6g}" fill="#d33"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit(p: PolygonChain, fmt: str, path: str | Path | None = None) -> str:
    if fmt == "svg":
        text = to_svg(p)
    elif fmt == "json":
        text = json.dumps(p.to_json(), indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text
