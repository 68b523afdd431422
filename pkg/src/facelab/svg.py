"""Deterministic SVG rendering of arrangements, faces, points, and paths."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import Arrangement
from .geom import Point


def _fmt(value: float) -> str:
    return f"{value:.4f}".rstrip("0").rstrip(".")


def render_svg(
    arr: Arrangement,
    highlight_faces: Sequence[int] = (),
    points: Sequence[Point] = (),
    path: Optional[Sequence[Point]] = None,
    width: int = 640,
    margin: float = 20.0,
) -> str:
    """SVG document: segments as lines, chosen faces filled, overlays on top.

    Identical inputs produce byte-identical output.
    """
    pts = [(float(p.x), float(p.y)) for p in arr.vertices]
    for s in arr.segments:
        pts.append((float(s.source.x), float(s.source.y)))
        pts.append((float(s.target.x), float(s.target.y)))
    for p in points:
        pts.append((float(p.x), float(p.y)))
    if path:
        pts.extend((float(p.x), float(p.y)) for p in path)
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span_x = max(max_x - min_x, 1e-9)
    span_y = max(max_y - min_y, 1e-9)
    scale = (width - 2 * margin) / max(span_x, span_y)
    height = int(span_y * scale + 2 * margin) + 1

    def tx(p) -> tuple[float, float]:
        x = (float(p[0]) - min_x) * scale + margin
        y = height - ((float(p[1]) - min_y) * scale + margin)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]

    for fid in highlight_faces:
        face = arr.faces[fid]
        if face.is_unbounded and face.outer_component is None and not face.inner_components:
            continue
        subpaths = []
        for cyc in arr.boundary_cycles(fid):
            coords = []
            for h in cyc:
                v = arr.vertices[h.origin]
                coords.append(tx((v.x, v.y)))
            if not coords:
                continue
            d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for (x, y) in coords) + " Z"
            subpaths.append(d)
        if subpaths:
            parts.append(
                '<path d="%s" fill="#ffd54d" fill-opacity="0.55" '
                'fill-rule="evenodd" stroke="none"/>' % " ".join(subpaths)
            )

    for e in arr.edges:
        a = tx((arr.vertices[e.u].x, arr.vertices[e.u].y))
        b = tx((arr.vertices[e.v].x, arr.vertices[e.v].y))
        parts.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(b[1])}" stroke="#1f3b73" stroke-width="1.5"/>'
        )
    if not arr.edges:
        for s in arr.segments:
            a = tx((s.source.x, s.source.y))
            b = tx((s.target.x, s.target.y))
            parts.append(
                f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
                f'y2="{_fmt(b[1])}" stroke="#1f3b73" stroke-width="1.5"/>'
            )

    if path:
        coords = [tx((p.x, p.y)) for p in path]
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for (x, y) in coords)
        parts.append(
            f'<path d="{d}" fill="none" stroke="#c62828" stroke-width="2" '
            'stroke-dasharray="6 3"/>'
        )

    for p in points:
        x, y = tx((p.x, p.y))
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="#c62828"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
