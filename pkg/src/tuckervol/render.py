"""SVG drawings of planar labeled triangulations, optionally deformed to a time t."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .build import standard_simplex_vertices
from .deform import TargetAssignment, targets_from_labeling
from .label import SPERNER, Labeling, find_complementary_edges
from .simplicial import Point, Triangulation, volume_of_points

SIZE = 480
MARGIN = 40


def _fmt(x: Fraction) -> str:
    # the only place exact values become decimals
    return f"{float(x):.3f}"


def render_svg(t: Triangulation, l: Optional[Labeling] = None, time=Fraction(0),
               highlight_complementary: bool = False,
               targets: Optional[TargetAssignment] = None) -> str:
    if t.dim != 2:
        raise ValueError("only 2-dimensional triangulations can be rendered")
    time = Fraction(time)
    if targets is None and l is not None:
        ambient = standard_simplex_vertices(2) if l.kind == SPERNER else None
        targets = targets_from_labeling(t, l, l.kind, ambient)
    pos: dict[int, Point] = {
        v: (targets.position(t, v, time) if targets is not None else p) for v, p in t.vertices.items()
    }

    xs = [p[0] for p in pos.values()] + [p[0] for p in t.vertices.values()]
    ys = [p[1] for p in pos.values()] + [p[1] for p in t.vertices.values()]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or Fraction(1)
    k = Fraction(SIZE - 2 * MARGIN) / span

    def sx(p: Sequence[Fraction]) -> str:
        return _fmt(MARGIN + (p[0] - lo_x) * k)

    def sy(p: Sequence[Fraction]) -> str:
        return _fmt(SIZE - MARGIN - (p[1] - lo_y) * k)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<text x="8" y="18" font-family="monospace" font-size="12">t = {time}</text>',
    ]
    for s in t.simplices:
        pts = [pos[v] for v in s.oriented()]
        vol = s.sign * volume_of_points([pos[v] for v in s.vertices]) if s.dim == 2 else Fraction(0)
        fill = "#dbe8f6" if vol > 0 else "#f6dbdb" if vol < 0 else "none"
        coords = " ".join(f"{sx(p)},{sy(p)}" for p in pts)
        out.append(f'<polygon points="{coords}" fill="{fill}" stroke="#555" stroke-width="1"/>')
    if highlight_complementary and l is not None:
        for e in find_complementary_edges(t, l):
            a, b = (pos[v] for v in e.endpoints)
            out.append(f'<line x1="{sx(a)}" y1="{sy(a)}" x2="{sx(b)}" y2="{sy(b)}" '
                       f'stroke="#d62728" stroke-width="4" class="complementary"/>')
    for v in sorted(pos):
        p = pos[v]
        fill = "black" if v in t.boundary else "#444"
        out.append(f'<circle cx="{sx(p)}" cy="{sy(p)}" r="3.5" fill="{fill}"/>')
        if l is not None and v in l:
            lab = l[v]
            text = f"{lab:+d}" if l.kind != SPERNER and lab else str(lab)
            out.append(f'<text x="{sx(p)}" y="{sy(p)}" dx="5" dy="-5" font-family="sans-serif" '
                       f'font-size="12">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
