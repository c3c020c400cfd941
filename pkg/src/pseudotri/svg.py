"""Deterministic SVG drawings of embedded graphs with optional angle marks."""

from __future__ import annotations

import math

from .cpt import CptLabeling
from .plane_graph import PlaneGraph
from .verify_geom import Embedding

MARGIN = 0.05


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(emb: Embedding, g: PlaneGraph, labeling: CptLabeling | None = None, size: int = 480) -> str:
    """Edges as segments, vertices as circles; big angles as arcs, small ones as dots.

    The y axis is flipped so that the drawing appears as in the plane.
    """
    pts = [(float(x), -float(y)) for x, y in emb.exact_coords]
    used = [pts[v] for v in g.vertices]
    xs = [p[0] for p in used]
    ys = [p[1] for p in used]
    w = max(xs) - min(xs)
    h = max(ys) - min(ys)
    extent = max(w, h) or 1.0
    pad = MARGIN * extent
    x0, y0 = min(xs) - pad, min(ys) - pad
    vw, vh = (w or extent) + 2 * pad, (h or extent) + 2 * pad
    r_vertex = 0.012 * extent
    r_mark = 0.05 * extent
    stroke = 0.004 * extent
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{_fmt(size * vh / vw)}" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(vw)} {_fmt(vh)}">',
        f'<g class="edges" stroke="black" stroke-width="{_fmt(stroke)}">',
    ]
    for u, v in g.edges:
        (ax, ay), (bx, by) = pts[u], pts[v]
        out.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
    out.append("</g>")
    if labeling is not None:
        out.append(f'<g class="angles" fill="none" stroke="firebrick" stroke-width="{_fmt(stroke)}">')
        for a in g.angles():
            if len(g.rotations[a.vertex]) == 0:
                continue
            out.append(_angle_mark(pts, a.vertex, a.next, a.prev, labeling.is_big(a), r_mark, g.degree(a.vertex)))
        out.append("</g>")
    out.append('<g class="vertices" fill="black">')
    for v in g.vertices:
        x, y = pts[v]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r_vertex)}"><title>{v}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _angle_mark(pts, v, nxt, prv, big: bool, r: float, degree: int) -> str:
    cx, cy = pts[v]
    # math-orientation angles (y flipped back)
    t1 = math.atan2(-(pts[nxt][1] - cy), pts[nxt][0] - cx)
    t2 = math.atan2(-(pts[prv][1] - cy), pts[prv][0] - cx)
    sweep = (t2 - t1) % (2 * math.pi)
    if degree == 1 or sweep == 0:
        sweep = 2 * math.pi
    if not big:
        mid = t1 + sweep / 2
        x, y = cx + 0.6 * r * math.cos(mid), cy - 0.6 * r * math.sin(mid)
        return f'<circle class="small" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(0.15 * r)}" fill="firebrick" stroke="none"/>'
    if sweep >= 2 * math.pi - 1e-12:
        return f'<circle class="big" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}"/>'
    sx, sy = cx + r * math.cos(t1), cy - r * math.sin(t1)
    ex, ey = cx + r * math.cos(t1 + sweep), cy - r * math.sin(t1 + sweep)
    large = 1 if sweep > math.pi else 0
    # ccw in the plane is clockwise on screen (sweep-flag 0)
    return (
        f'<path class="big" d="M {_fmt(sx)} {_fmt(sy)} A {_fmt(r)} {_fmt(r)} 0 {large} 0 '
        f'{_fmt(ex)} {_fmt(ey)}"/>'
    )
