"""Deterministic SVG figures for planar covers and normal fans.

Output depends only on the exact input geometry: coordinates go through
correctly rounded float conversion and fixed-precision formatting, elements are
emitted in sorted order, and nothing time- or environment-dependent is written.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key

from .covering import CoverVerdict, convex_normal_at, pair_convex_normal
from .errors import NotTwoDimensional
from .fan import normal_fan
from .geometry import Polytope, minkowski_sum, scale
from .lattice import g_set_origins

UNIT = 80  # pixels per unit length
MARGIN = 1  # grid units of padding around the drawing

# one class per generating vertex, in vertex order
ORIGIN_COLORS = ["#1f4e9c", "#e6b800", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"]

STYLE = """\
.grid{stroke:#d9d9d9;stroke-width:1}
.axis{stroke:#9a9a9a;stroke-width:1.5}
.target{fill:none;stroke:#000000;stroke-width:2.5}
.translate{fill:#7f9fbf;fill-opacity:0.10;stroke:#4f6f8f;stroke-width:1}
.residual{fill:#e15759;fill-opacity:0.55;stroke:#a01010;stroke-width:1.5}
.witness{fill:#ffffff;stroke:#a01010;stroke-width:2}
.ray{stroke:#333333;stroke-width:2}
.sector{fill-opacity:0.25;stroke:none}
"""


def _require_2d(*polys: Polytope):
    for P in polys:
        if P.dim != 2:
            raise NotTwoDimensional(f"figures are planar only; got dimension {P.dim}")


def _f(x) -> str:
    s = f"{float(x):.2f}"
    s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _cyclic(points) -> list:
    """Counter-clockwise order of the vertices of a convex polygon, exactly."""
    pts = sorted(set(points))
    n = len(pts)
    cx = sum(p[0] for p in pts) / n
    cy = sum(p[1] for p in pts) / n

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(pts, key=cmp_to_key(cmp))


class _Canvas:
    def __init__(self, lo, hi):
        self.x0 = math.floor(lo[0]) - MARGIN
        self.y0 = math.floor(lo[1]) - MARGIN
        self.x1 = math.ceil(hi[0]) + MARGIN
        self.y1 = math.ceil(hi[1]) + MARGIN
        self.parts: list[str] = []

    def xy(self, p) -> str:
        # flip y so that the picture has the usual orientation
        return f"{_f((Fraction(p[0]) - self.x0) * UNIT)},{_f((self.y1 - Fraction(p[1])) * UNIT)}"

    def grid(self):
        w = (self.x1 - self.x0) * UNIT
        h = (self.y1 - self.y0) * UNIT
        lines = []
        for x in range(self.x0, self.x1 + 1):
            cls = "axis" if x == 0 else "grid"
            px = (x - self.x0) * UNIT
            lines.append(f'<line class="{cls}" x1="{px}" y1="0" x2="{px}" y2="{h}"/>')
        for y in range(self.y0, self.y1 + 1):
            cls = "axis" if y == 0 else "grid"
            py = (self.y1 - y) * UNIT
            lines.append(f'<line class="{cls}" x1="0" y1="{py}" x2="{w}" y2="{py}"/>')
        self.parts.append('<g id="grid">\n' + "\n".join(lines) + "\n</g>")

    def polygon(self, pts, cls: str):
        coords = " ".join(self.xy(p) for p in _cyclic(pts))
        self.parts.append(f'<polygon class="{cls}" points="{coords}"/>')

    def circle(self, p, r: float, cls: str):
        x, y = self.xy(p).split(",")
        self.parts.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{_f(r)}"/>')

    def line(self, p, q, cls: str):
        x1, y1 = self.xy(p).split(",")
        x2, y2 = self.xy(q).split(",")
        self.parts.append(f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')

    def render(self, title: str, extra_style: str = "") -> str:
        w = (self.x1 - self.x0) * UNIT
        h = (self.y1 - self.y0) * UNIT
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">\n'
            f"<title>{title}</title>\n<style>\n{STYLE}{extra_style}</style>\n"
        )
        return head + "\n".join(self.parts) + "\n</svg>\n"


def _origin_style(n: int) -> str:
    return "".join(
        f".g{i}{{fill:{ORIGIN_COLORS[i % len(ORIGIN_COLORS)]};stroke:#000000;stroke-width:0.5}}\n"
        for i in range(n)
    )


def _cover_svg(target: Polytope, source: Polytope, P: Polytope, verdict: CoverVerdict, title: str) -> str:
    origins = g_set_origins(source)
    lo, hi = target.bounding_box()
    plo, phi = P.bounding_box()
    # translates may stick out of the target
    lo = [min(a, min(g[i] for g in origins) + plo[i]) for i, a in enumerate(lo)]
    hi = [max(a, max(g[i] for g in origins) + phi[i]) for i, a in enumerate(hi)]
    cv = _Canvas(lo, hi)
    cv.grid()
    for g in origins:
        cv.polygon([(g[0] + v[0], g[1] + v[1]) for v in P.vertices], "translate")
    for cell in verdict.residual_cells:
        cv.polygon(cell.vertices, "residual")
    cv.polygon(target.vertices, "target")
    for g, idx in origins.items():
        cv.circle(g, 6, f"gpt g{idx}")
    if verdict.witness is not None:
        cv.circle(verdict.witness, 5, "witness")
    status = "covered" if verdict.covered else "uncovered"
    return cv.render(f"{title}: {status}", _origin_style(len(source.vertices)))


def convex_normal_svg(P: Polytope, c) -> str:
    """cP with the translates g + P, g in G((c-1)P); residual cells highlighted when uncovered."""
    _require_2d(P)
    c = Fraction(c)
    v = convex_normal_at(P, c)
    return _cover_svg(scale(P, c), scale(P, c - 1), P, v, f"cP and G((c-1)P)+P at c={c}")


def pair_svg(Q: Polytope, P: Polytope) -> str:
    """Q + P with the translates g + P, g in G(Q)."""
    _require_2d(Q, P)
    v = pair_convex_normal(Q, P)
    return _cover_svg(minkowski_sum(Q, P), Q, P, v, "Q+P and G(Q)+P")


def fan_svg(P: Polytope) -> str:
    """Normal fan of a polygon: one ray per facet normal, one shaded sector per vertex."""
    _require_2d(P)
    fan = normal_fan(P)
    R = 2
    cv = _Canvas((-R, -R), (R, R))
    cv.grid()

    def tip(g):
        n = math.hypot(*g)
        return (R * g[0] / n, R * g[1] / n)

    styles = []
    for idx, cone in sorted(fan.vertex_cones().items()):
        color = ORIGIN_COLORS[idx % len(ORIGIN_COLORS)]
        styles.append(f".s{idx}{{fill:{color}}}\n")
        a, b = (tip(g) for g in cone.generators)
        coords = " ".join(cv.xy(p) for p in [(0, 0), a, b])
        cv.parts.append(f'<polygon class="sector s{idx}" points="{coords}"/>')
    for h in P.facets:
        cv.line((0, 0), tip(h.normal), "ray")
    return cv.render(f"normal fan, {len(P.vertices)} maximal cones", "".join(styles))


def write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
