"""SVG rendering of cell diagrams.

Geometry stays exact up to the moment a coordinate is written: pixel
positions are computed as Fractions and printed as decimals rounded to
12 significant digits.  The first panel shows the main window; every zoom
window is outlined in red there and gets its own panel to the right.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from xml.sax.saxutils import escape

from .cells import Box, CellDiagram
from .construction import FamilyConstants, _step_point

MARGIN = 40
SIG_DIGITS = 12


def dec(x) -> str:
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = SIG_DIGITS
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = f"{d.normalize():f}"
    return "0" if s in ("-0", "0") else s


@dataclass
class Viewport:
    window: Box = field(default_factory=Box.unit)
    size: int = 480
    zooms: list = field(default_factory=list)

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError("viewport size must be positive")


def fill_color(i: int) -> str:
    return f"hsl({(i * 137) % 360},60%,72%)"


def family_zoom_windows(constants: FamilyConstants, n: int, depth: int = 1) -> list:
    """Construction boxes of level n, then their nested images down ``depth`` levels."""
    windows = []
    # each map sends level-k coordinates to level-n coordinates; all are coordinatewise increasing
    maps = [lambda p: p]
    for k in range(n, max(n - depth, 1), -1):
        for m in maps:
            for lo, hi in (constants.lower_box(k), constants.upper_box(k)):
                windows.append(Box(m(lo), m(hi)))
        th = constants.theta[k]
        maps = [
            (lambda p, m=m, th=th, w=w: m(_step_point(p, th, w)))
            for m in maps
            for w in (False, True)
        ]
    return windows


class _Panel:
    def __init__(self, window: Box, size: int, x0: int, y0: int):
        self.window, self.size, self.x0, self.y0 = window, size, x0, y0
        l, b, r, t = window.as_tuple()
        self.sx = Fraction(size) / (r - l)
        self.sy = Fraction(size) / (t - b)

    def xy(self, p) -> tuple:
        l, b, _, t = self.window.as_tuple()
        return self.x0 + (p.lam - l) * self.sx, self.y0 + (t - p.mu) * self.sy

    def pts(self, vertices) -> str:
        return " ".join(f"{dec(x)},{dec(y)}" for x, y in map(self.xy, vertices))


def _axes(panel: _Panel, out: list, title: str):
    x0, y0, s = panel.x0, panel.y0, panel.size
    l, b, r, t = panel.window.as_tuple()
    out.append(f'<rect class="frame" x="{x0}" y="{y0}" width="{s}" height="{s}" fill="none" stroke="#333" stroke-width="1"/>')
    out.append(f'<line class="axis" x1="{x0}" y1="{y0 + s}" x2="{x0 + s}" y2="{y0 + s}" stroke="#000"/>')
    out.append(f'<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y0 + s}" stroke="#000"/>')
    text = 'font-family="sans-serif" font-size="11"'
    out.append(f'<text x="{x0}" y="{y0 + s + 14}" {text}>{dec(l)}</text>')
    out.append(f'<text x="{x0 + s}" y="{y0 + s + 14}" text-anchor="end" {text}>{dec(r)}</text>')
    out.append(f'<text x="{x0 + s // 2}" y="{y0 + s + 28}" text-anchor="middle" {text}>λ</text>')
    out.append(f'<text x="{x0 - 4}" y="{y0 + s}" text-anchor="end" {text}>{dec(b)}</text>')
    out.append(f'<text x="{x0 - 4}" y="{y0 + 10}" text-anchor="end" {text}>{dec(t)}</text>')
    out.append(f'<text x="{x0 - 24}" y="{y0 + s // 2}" {text}>μ</text>')
    out.append(f'<text x="{x0}" y="{y0 - 8}" {text}>{escape(title)}</text>')


def _cells(d: CellDiagram, panel: _Panel, out: list, css: str, colors: dict):
    for S in sorted(d.cells):
        poly = d.cells[S].clip_box(panel.window)
        if not poly.has_interior():
            continue
        out.append(
            f'<polygon class="{css}" data-cut="{S.mask}" points="{panel.pts(poly.vertices)}" '
            f'fill="{colors[S]}" stroke="#222" stroke-width="0.5"/>'
        )


def _markers(certs, panel: _Panel, out: list):
    l, b, r, t = panel.window.as_tuple()
    for cert in certs or ():
        p = cert.point
        if l <= p.lam <= r and b <= p.mu <= t:
            x, y = panel.xy(p)
            out.append(f'<circle class="cert" data-cut="{cert.cut.mask}" cx="{dec(x)}" cy="{dec(y)}" r="2.5" fill="#000"/>')


def render_svg(d: CellDiagram, certs=None, viewport: Viewport | None = None) -> bytes:
    v = viewport or Viewport()
    panels = 1 + len(v.zooms)
    width = panels * (v.size + 2 * MARGIN)
    height = v.size + 2 * MARGIN
    colors = {S: fill_color(i) for i, S in enumerate(sorted(d.cells))}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#fff"/>',
    ]
    main = _Panel(v.window, v.size, MARGIN, MARGIN)
    out.append('<g class="panel" id="main">')
    _cells(d, main, out, "cell", colors)
    _markers(certs, main, out)
    for z in v.zooms:
        clipped = Box.of(*_intersect(z, v.window)) if _overlaps(z, v.window) else None
        if clipped is None:
            continue
        (x1, y1), (x2, y2) = main.xy(clipped.lo), main.xy(clipped.hi)
        out.append(
            f'<rect class="zoom-outline" x="{dec(x1)}" y="{dec(y2)}" width="{dec(x2 - x1)}" '
            f'height="{dec(y1 - y2)}" fill="none" stroke="#d00" stroke-width="1"/>'
        )
    _axes(main, out, "cells")
    out.append("</g>")
    for i, z in enumerate(v.zooms, start=1):
        panel = _Panel(z, v.size, i * (v.size + 2 * MARGIN) + MARGIN, MARGIN)
        out.append(f'<g class="panel" id="zoom-{i}">')
        _cells(d, panel, out, "cell-zoom", colors)
        _markers(certs, panel, out)
        _axes(panel, out, f"zoom {i}")
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _overlaps(a: Box, b: Box) -> bool:
    return a.lo.lam < b.hi.lam and b.lo.lam < a.hi.lam and a.lo.mu < b.hi.mu and b.lo.mu < a.hi.mu


def _intersect(a: Box, b: Box) -> tuple:
    return (max(a.lo.lam, b.lo.lam), max(a.lo.mu, b.lo.mu), min(a.hi.lam, b.hi.lam), min(a.hi.mu, b.hi.mu))
